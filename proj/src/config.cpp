#include "fdsim/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

namespace fdsim {

std::string_view to_string(DuplexMode mode)
{
    switch (mode) {
    case DuplexMode::HdFdd: return "HD_FDD";
    case DuplexMode::Dtdd: return "DTDD";
    case DuplexMode::Fd: return "FD";
    }
    return "?";
}

DuplexMode parse_duplex_mode(std::string_view text)
{
    if (text == "HD_FDD" || text == "hd" || text == "HD") {
        return DuplexMode::HdFdd;
    }
    if (text == "DTDD" || text == "dtdd") {
        return DuplexMode::Dtdd;
    }
    if (text == "FD" || text == "fd") {
        return DuplexMode::Fd;
    }
    throw ConfigError("unknown duplex mode '" + std::string(text) + "'");
}

namespace {

std::string format_double(double v)
{
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double parse_double(std::string_view key, std::string_view text)
{
    const std::string t = trim(text);
    if (t == "inf" || t == "+inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (t == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    double value = 0.0;
    const auto* end = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(t.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("bad numeric value '" + t + "' for key '" + std::string(key) + "'");
    }
    return value;
}

template <class Int>
Int parse_int(std::string_view key, std::string_view text)
{
    const std::string t = trim(text);
    Int value{};
    const auto* end = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(t.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("bad integer value '" + t + "' for key '" + std::string(key) + "'");
    }
    return value;
}

struct Field {
    std::string name;
    std::function<void(ScenarioConfig&, std::string_view)> set;
    std::function<std::string(const ScenarioConfig&)> get;
};

template <class T>
Field make_field(std::string name, T ScenarioConfig::*member)
{
    Field f;
    f.name = name;
    f.set = [member, name](ScenarioConfig& c, std::string_view text) {
        if constexpr (std::is_same_v<T, double>) {
            c.*member = parse_double(name, text);
        }
        else if constexpr (std::is_same_v<T, DuplexMode>) {
            c.*member = parse_duplex_mode(trim(text));
        }
        else {
            c.*member = parse_int<T>(name, text);
        }
    };
    f.get = [member](const ScenarioConfig& c) {
        if constexpr (std::is_same_v<T, double>) {
            return format_double(c.*member);
        }
        else if constexpr (std::is_same_v<T, DuplexMode>) {
            return std::string(to_string(c.*member));
        }
        else {
            return std::to_string(c.*member);
        }
    };
    return f;
}

const std::vector<Field>& fields()
{
    static const std::vector<Field> table = {
        make_field("isd_m", &ScenarioConfig::isd_m),
        make_field("n_sites", &ScenarioConfig::n_sites),
        make_field("sectors_per_site", &ScenarioConfig::sectors_per_site),
        make_field("bs_height_m", &ScenarioConfig::bs_height_m),
        make_field("bs_tx_power_w", &ScenarioConfig::bs_tx_power_w),
        make_field("carrier_hz", &ScenarioConfig::carrier_hz),
        make_field("system_bandwidth_hz", &ScenarioConfig::system_bandwidth_hz),
        make_field("bs_antennas", &ScenarioConfig::bs_antennas),
        make_field("ue_antennas", &ScenarioConfig::ue_antennas),
        make_field("streams_per_ue", &ScenarioConfig::streams_per_ue),
        make_field("ue_height_m", &ScenarioConfig::ue_height_m),
        make_field("ue_max_power_w", &ScenarioConfig::ue_max_power_w),
        make_field("ul_snr_target_db", &ScenarioConfig::ul_snr_target_db),
        make_field("si_cancellation_db", &ScenarioConfig::si_cancellation_db),
        make_field("intra_site_cli_loss_db", &ScenarioConfig::intra_site_cli_loss_db),
        make_field("cli_suppression_db", &ScenarioConfig::cli_suppression_db),
        make_field("dl_sinr_cap_db", &ScenarioConfig::dl_sinr_cap_db),
        make_field("utilization", &ScenarioConfig::utilization),
        make_field("dl_to_ul_load_ratio", &ScenarioConfig::dl_to_ul_load_ratio),
        make_field("duplex_mode", &ScenarioConfig::duplex_mode),
        make_field("bsint_nulls", &ScenarioConfig::bsint_nulls),
        make_field("noise_figure_db", &ScenarioConfig::noise_figure_db),
        make_field("seed", &ScenarioConfig::seed),
        make_field("users_per_drop", &ScenarioConfig::users_per_drop),
        make_field("min_drop_distance_m", &ScenarioConfig::min_drop_distance_m),
        make_field("bs_array_gain_db", &ScenarioConfig::bs_array_gain_db),
        make_field("ue_noise_figure_db", &ScenarioConfig::ue_noise_figure_db),
        make_field("rician_k_db", &ScenarioConfig::rician_k_db),
        make_field("ue_ue_extra_loss_db", &ScenarioConfig::ue_ue_extra_loss_db),
        make_field("csi_error_ratio_db", &ScenarioConfig::csi_error_ratio_db),
    };
    return table;
}

const Field& find_field(std::string_view key)
{
    for (const auto& f : fields()) {
        if (f.name == key) {
            return f;
        }
    }
    throw ConfigError("unknown config key '" + std::string(key) + "'");
}

}  // namespace

void ScenarioConfig::validate() const
{
    auto require = [](bool ok, const char* what) {
        if (!ok) {
            throw ConfigError(what);
        }
    };
    require(isd_m > 0, "isd_m must be positive");
    require(n_sites >= 1, "n_sites must be at least 1");
    require(sectors_per_site == 1 || sectors_per_site == 3, "sectors_per_site must be 1 or 3");
    require(bs_height_m > 0 && ue_height_m > 0, "antenna heights must be positive");
    require(users_per_drop >= 0, "users_per_drop must be non-negative");
    require(min_drop_distance_m > 0, "min_drop_distance_m must be positive");
    require(bs_tx_power_w >= 0 && ue_max_power_w >= 0, "powers must be non-negative");
    require(carrier_hz > 0 && system_bandwidth_hz > 0, "carrier and bandwidth must be positive");
    require(bs_antennas >= 1 && ue_antennas >= 1, "antenna counts must be at least 1");
    require(streams_per_ue >= 1, "streams_per_ue must be at least 1");
    require(streams_per_ue <= ue_antennas && streams_per_ue <= bs_antennas,
            "streams_per_ue cannot exceed the antenna count of either end");
    require(utilization >= 0 && utilization <= 1, "utilization must lie in [0,1]");
    require(dl_to_ul_load_ratio > 0, "dl_to_ul_load_ratio must be positive");
    require(bsint_nulls >= 0, "bsint_nulls must be non-negative");
    require(bsint_nulls <= bs_antennas - 1, "bsint_nulls must not exceed bs_antennas - 1");
    // each nulled BS takes one dimension per stream, the other own streams one each
    require(bsint_nulls == 0 || (bsint_nulls + 1) * streams_per_ue <= bs_antennas,
            "bsint_nulls plus the desired streams exceed the receive antennas");
    require(!std::isnan(si_cancellation_db) && !std::isnan(cli_suppression_db),
            "suppression values must be numbers");
    require(intra_site_cli_loss_db >= 0, "intra_site_cli_loss_db must be non-negative");
}

ScenarioConfig preset_uma500()
{
    ScenarioConfig c;
    c.isd_m = 500.0;
    c.n_sites = 7;
    c.sectors_per_site = 3;
    c.bs_height_m = 25.0;
    c.bs_tx_power_w = 40.0;
    c.carrier_hz = 3.5e9;
    c.system_bandwidth_hz = 40e6;
    c.bs_antennas = 2;
    c.ue_antennas = 2;
    c.streams_per_ue = 2;
    c.bs_array_gain_db = 10.0 * std::log10(64.0);
    c.ue_height_m = 1.5;
    c.ue_max_power_w = 0.2;
    c.ul_snr_target_db = 10.0;
    c.users_per_drop = 3000;
    c.si_cancellation_db = 0.0;
    c.intra_site_cli_loss_db = 60.0;
    c.cli_suppression_db = 0.0;
    c.dl_sinr_cap_db = std::numeric_limits<double>::infinity();
    c.utilization = 0.5;
    c.dl_to_ul_load_ratio = 2.0;
    c.duplex_mode = DuplexMode::Fd;
    return c;
}

ScenarioConfig preset_uma200()
{
    ScenarioConfig c;
    c.isd_m = 200.0;
    c.n_sites = 7;
    c.sectors_per_site = 1;
    c.bs_height_m = 10.0;
    c.bs_tx_power_w = 1.0;
    c.carrier_hz = 3.5e9;
    c.system_bandwidth_hz = 40e6;
    c.bs_antennas = 128;
    c.ue_antennas = 2;
    c.streams_per_ue = 1;
    c.bs_array_gain_db = 0.0;
    c.ue_height_m = 1.5;
    c.ue_max_power_w = 0.2;
    c.ul_snr_target_db = 10.0;
    c.users_per_drop = 700;
    c.si_cancellation_db = 110.0;
    c.intra_site_cli_loss_db = 60.0;
    c.cli_suppression_db = 0.0;
    c.dl_sinr_cap_db = 30.0;
    c.utilization = 0.5;
    c.dl_to_ul_load_ratio = 2.0;
    c.duplex_mode = DuplexMode::Fd;
    return c;
}

ScenarioConfig preset_by_name(std::string_view name)
{
    if (name == "uma500") {
        return preset_uma500();
    }
    if (name == "uma200") {
        return preset_uma200();
    }
    throw ConfigError("unknown scenario preset '" + std::string(name) + "'");
}

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& f : fields()) {
            k.push_back(f.name);
        }
        return k;
    }();
    return keys;
}

void set_config_value(ScenarioConfig& config, std::string_view key, std::string_view value)
{
    find_field(key).set(config, value);
}

std::string get_config_value(const ScenarioConfig& config, std::string_view key)
{
    return find_field(key).get(config);
}

ScenarioConfig parse_config_text(std::string_view text, ScenarioConfig base)
{
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string body = trim(line);
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        set_config_value(base, trim(std::string_view(body).substr(0, eq)),
                         std::string_view(body).substr(eq + 1));
    }
    return base;
}

ScenarioConfig load_config_file(const std::string& path, ScenarioConfig base)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), std::move(base));
}

std::string format_config(const ScenarioConfig& config, std::string_view prefix)
{
    std::string out;
    for (const auto& f : fields()) {
        out += prefix;
        out += f.name;
        out += " = ";
        out += f.get(config);
        out += '\n';
    }
    return out;
}

}  // namespace fdsim
