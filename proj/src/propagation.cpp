#include "fdsim/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdsim/config.hpp"

namespace fdsim {

namespace {
constexpr double kStreetWidthM = 20.0;
constexpr double kBuildingHeightM = 20.0;
}  // namespace

double pathloss_uma_nlos_exponent(double h_bs_m)
{
    return (43.42 - 3.1 * std::log10(h_bs_m)) / 10.0;
}

double pathloss_uma(double d_2d_m, double carrier_hz, double h_bs_m, double h_ue_m, bool los,
                    double min_distance_m)
{
    if (!(d_2d_m >= min_distance_m)) {
        throw DomainError("pathloss_uma: distance " + std::to_string(d_2d_m) +
                          " m below floor " + std::to_string(min_distance_m) + " m");
    }
    const double fc_ghz = carrier_hz / 1e9;
    const double log_d = std::log10(d_2d_m);

    if (los) {
        const double h_bs_eff = h_bs_m - 1.0;
        const double h_ue_eff = h_ue_m - 1.0;
        const double d_bp = 4.0 * h_bs_eff * h_ue_eff * carrier_hz / kSpeedOfLight;
        if (d_2d_m < d_bp) {
            return 22.0 * log_d + 28.0 + 20.0 * std::log10(fc_ghz);
        }
        return 40.0 * log_d + 7.8 - 18.0 * std::log10(h_bs_eff) - 18.0 * std::log10(h_ue_eff) +
               2.0 * std::log10(fc_ghz);
    }

    const double w = kStreetWidthM;
    const double h = kBuildingHeightM;
    const double hr = h / h_bs_m;
    const double lg = std::log10(11.75 * h_ue_m);
    return 161.04 - 7.1 * std::log10(w) + 7.5 * std::log10(h) -
           (24.37 - 3.7 * hr * hr) * std::log10(h_bs_m) +
           (43.42 - 3.1 * std::log10(h_bs_m)) * (log_d - 3.0) + 20.0 * std::log10(fc_ghz) -
           (3.2 * lg * lg - 4.97);
}

double los_probability(double d_2d_m)
{
    if (d_2d_m <= 0.0) {
        return 1.0;
    }
    const double e = std::exp(-d_2d_m / 63.0);
    return std::min(18.0 / d_2d_m, 1.0) * (1.0 - e) + e;
}

double free_space_pathloss(double d_m, double carrier_hz)
{
    if (!(d_m > 0.0)) {
        throw DomainError("free_space_pathloss: distance must be positive");
    }
    return 20.0 * std::log10(4.0 * kPi * d_m * carrier_hz / kSpeedOfLight);
}

double wrap_angle(double rad)
{
    double a = std::fmod(rad, 2.0 * kPi);
    if (a <= -kPi) {
        a += 2.0 * kPi;
    }
    else if (a > kPi) {
        a -= 2.0 * kPi;
    }
    return a;
}

double sector_gain_db(double bearing_rad, double azimuth_rad)
{
    const double phi = wrap_angle(azimuth_rad - bearing_rad) / kSectorHpbwRad;
    return -std::min(12.0 * phi * phi, kSectorFloorDb);
}

}  // namespace fdsim
