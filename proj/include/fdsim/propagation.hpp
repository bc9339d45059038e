#pragma once

// Large-scale propagation formulas: urban-macro pathloss, LOS probability,
// free-space loss and the sector element pattern.

namespace fdsim {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 299792458.0;

/// Minimum 2-D distance accepted by pathloss_uma, in meters.
inline constexpr double kDefaultMinDistanceM = 35.0;

/**
 * ITU-R M.2135 urban-macro pathloss in dB.
 *
 * LOS uses the dual-slope model with breakpoint 4 h'_BS h'_UT f_c / c
 * (effective heights 1 m below the physical ones). NLOS uses the
 * 161.04 - 7.1 log10(W) + 7.5 log10(h) ... expression with street width
 * W = 20 m and building height h = 20 m. `d_2d_m` below `min_distance_m`
 * throws DomainError.
 */
double pathloss_uma(double d_2d_m, double carrier_hz, double h_bs_m, double h_ue_m, bool los,
                    double min_distance_m = kDefaultMinDistanceM);

/// Distance exponent (dB per decade / 10) of the NLOS branch.
double pathloss_uma_nlos_exponent(double h_bs_m);

/// M.2135 UMa LOS probability min(18/d,1)(1 - exp(-d/63)) + exp(-d/63).
double los_probability(double d_2d_m);

/// Free-space pathloss 20 log10(4 pi d f / c), in dB.
double free_space_pathloss(double d_m, double carrier_hz);

/// Half-power beamwidth of the sector pattern, radians.
inline constexpr double kSectorHpbwRad = 65.0 * kPi / 180.0;
/// Front-to-back floor of the sector pattern, dB.
inline constexpr double kSectorFloorDb = 30.0;

/// Relative gain -min(12 (phi/HPBW)^2, 30) dB, phi = azimuth off boresight.
double sector_gain_db(double bearing_rad, double azimuth_rad);

/// Wrap an angle into (-pi, pi].
double wrap_angle(double rad);

}  // namespace fdsim
