#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fdsim {

/// Thrown for any invalid or infeasible scenario parameter.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a physical formula is evaluated outside its domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class DuplexMode { HdFdd, Dtdd, Fd };

std::string_view to_string(DuplexMode mode);
DuplexMode parse_duplex_mode(std::string_view text);

/**
 * Every physical and traffic parameter of a simulation campaign.
 *
 * Field names double as the keys of the text config format
 * (`key = value` per line, `#` starts a comment). Powers are linear watts,
 * ratios in dB unless the name says otherwise.
 */
struct ScenarioConfig {
    // geometry
    double isd_m = 500.0;
    int n_sites = 7;
    int sectors_per_site = 3;
    double bs_height_m = 25.0;
    double ue_height_m = 1.5;
    int users_per_drop = 3000;
    double min_drop_distance_m = 35.0;

    // radio
    double bs_tx_power_w = 40.0;
    double carrier_hz = 3.5e9;
    double system_bandwidth_hz = 40e6;
    int bs_antennas = 2;
    int ue_antennas = 2;
    int streams_per_ue = 2;
    double bs_array_gain_db = 0.0;  // fixed offset on serving links only
    double ue_max_power_w = 0.2;
    double ul_snr_target_db = 10.0;
    double noise_figure_db = 5.0;     // BS receiver
    double ue_noise_figure_db = 9.0;  // UE receiver
    double rician_k_db = 15.0;        // self-interference channel
    double ue_ue_extra_loss_db = 6.0;
    // CSI estimation error power relative to the channel; -inf is perfect CSI
    double csi_error_ratio_db = -std::numeric_limits<double>::infinity();

    // suppression
    double si_cancellation_db = 0.0;
    double intra_site_cli_loss_db = 60.0;
    double cli_suppression_db = 0.0;
    double dl_sinr_cap_db = 30.0;

    // traffic / operation
    double utilization = 0.5;
    double dl_to_ul_load_ratio = 2.0;
    DuplexMode duplex_mode = DuplexMode::Fd;
    int bsint_nulls = 0;
    std::uint64_t seed = 1;

    /// Throws ConfigError on any violated invariant.
    void validate() const;
};

/// Macro-cell preset: 7 tri-sector sites, 500 m ISD, 40 W, 2x2 SU-MIMO.
ScenarioConfig preset_uma500();
/// Dense preset: 7 sites, 200 m ISD, 128-antenna BS, 1 W, 110 dB SI cancellation.
ScenarioConfig preset_uma200();
/// Resolve a preset name (`uma500`, `uma200`); throws ConfigError otherwise.
ScenarioConfig preset_by_name(std::string_view name);

/// Names of every config key, in canonical order.
const std::vector<std::string>& config_keys();

/// Set one field from its textual value; throws ConfigError on unknown key or bad value.
void set_config_value(ScenarioConfig& config, std::string_view key, std::string_view value);
/// Read one field as text (round-trips through set_config_value).
std::string get_config_value(const ScenarioConfig& config, std::string_view key);

/// Parse a `key = value` text document on top of `base`.
ScenarioConfig parse_config_text(std::string_view text, ScenarioConfig base = {});
/// Load a config file; throws ConfigError when unreadable or malformed.
ScenarioConfig load_config_file(const std::string& path, ScenarioConfig base = {});
/// Serialize every field, one `prefix + key = value` per line.
std::string format_config(const ScenarioConfig& config, std::string_view prefix = "");

}  // namespace fdsim
