#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fdsim/config.hpp"
#include "fdsim/engine.hpp"
#include "fdsim/metrics.hpp"

#ifndef FDSIM_VERSION
#define FDSIM_VERSION "0.0.0-unknown"
#endif

namespace fdsim {

namespace {

namespace fs = std::filesystem;

constexpr double kMediumUtilization = 0.5;
constexpr double kLowUtilization = 0.1;

struct Sweep {
    std::string key;
    std::vector<double> values;
};

// dashed aliases for the common sweep keys; anything else must be a config key
std::string resolve_key(std::string key)
{
    static const std::map<std::string, std::string> aliases{
        {"cli-suppression", "cli_suppression_db"},
        {"si-cancellation", "si_cancellation_db"},
        {"intra-site-loss", "intra_site_cli_loss_db"},
        {"utilization", "utilization"},
        {"bsint", "bsint_nulls"},
    };
    if (auto it = aliases.find(key); it != aliases.end()) {
        return it->second;
    }
    std::replace(key.begin(), key.end(), '-', '_');
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        throw ConfigError("unknown config key '" + key + "'");
    }
    return key;
}

double parse_number(const std::string& text, const std::string& what)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    }
    catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) {
        throw ConfigError("malformed number '" + text + "' in " + what);
    }
    return v;
}

Sweep parse_sweep(const std::string& spec)
{
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("--sweep expects key=start:step:stop");
    }
    Sweep s;
    s.key = resolve_key(spec.substr(0, eq));
    std::vector<double> parts;
    std::stringstream rest(spec.substr(eq + 1));
    for (std::string tok; std::getline(rest, tok, ':');) {
        parts.push_back(parse_number(tok, "--sweep"));
    }
    if (parts.size() != 3 || !(parts[1] > 0.0) || parts[2] < parts[0]) {
        throw ConfigError("--sweep expects start:step:stop with step > 0 and stop >= start");
    }
    const auto n = static_cast<int>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9));
    for (int i = 0; i <= n; ++i) {
        s.values.push_back(parts[0] + parts[1] * i);
    }
    return s;
}

double parse_traffic(const std::string& t)
{
    if (t == "medium") {
        return kMediumUtilization;
    }
    if (t == "low") {
        return kLowUtilization;
    }
    if (t.starts_with("custom=")) {
        return parse_number(t.substr(7), "--traffic");
    }
    throw ConfigError("--traffic expects low, medium or custom=U");
}

std::string format_value(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::vector<Variant> pick_variants(const ScenarioConfig& config, const std::string& mode)
{
    if (mode == "all") {
        return standard_variants(config);
    }
    return {Variant::from_config(config)};
}

struct RunOptions {
    bool paired = false;
    bool write_reports = true;
    CampaignOptions campaign;
};

void write_outputs(const fs::path& dir, const CampaignResult& result, const RunOptions& opts,
                   std::ostream& out)
{
    fs::create_directories(dir);
    const std::string header = format_config(result.config, "# ");

    if (opts.write_reports) {
        std::ofstream csv(dir / "reports.csv");
        write_reports_csv(csv, result);
    }

    const auto cdfs = variant_cdfs(result);
    const std::pair<const char*, EmpiricalCdf VariantCdfs::*> kinds[] = {
        {"sum", &VariantCdfs::sum},         {"ul", &VariantCdfs::ul},
        {"dl", &VariantCdfs::dl},           {"ul_user", &VariantCdfs::ul_user},
        {"dl_user", &VariantCdfs::dl_user},
    };
    for (std::size_t v = 0; v < cdfs.size(); ++v) {
        for (const auto& [kind, member] : kinds) {
            std::ofstream f(dir / ("cdf_" + result.variants[v].name + "_" + kind + ".txt"));
            write_cdf(f, cdfs[v].*member,
                      header + "# variant = " + result.variants[v].name + "\n# metric = " + kind +
                          "_throughput_bps\n# columns: value cumulative_probability");
        }
    }

    if (cdfs.size() > 1) {
        const double ps[] = {0.05, 0.5};
        std::ofstream(dir / "gains.json") << gain_table_json(gain_table(result, cdfs, ps)) << '\n';
    }

    nlohmann::json meta;
    meta["version"] = FDSIM_VERSION;
    meta["seed"] = result.config.seed;
    meta["drops"] = result.n_drops;
    meta["slots"] = result.n_slots;
    meta["paired"] = opts.paired;
    meta["workers"] = opts.campaign.workers;
    nlohmann::json cfg;
    for (const auto& k : config_keys()) {
        cfg[k] = get_config_value(result.config, k);
    }
    meta["config"] = cfg;
    for (std::size_t v = 0; v < result.variants.size(); ++v) {
        const auto& var = result.variants[v];
        char th[17];
        char fd[17];
        std::snprintf(th, sizeof th, "%016llx",
                      static_cast<unsigned long long>(result.traffic_checksum[v]));
        std::snprintf(fd, sizeof fd, "%016llx",
                      static_cast<unsigned long long>(result.fading_checksum[v]));
        const auto q = [](const EmpiricalCdf& c, double p) -> nlohmann::json {
            if (c.empty()) {
                return nullptr;
            }
            return percentile(c, p);
        };
        meta["variants"].push_back({
            {"name", var.name},
            {"mode", to_string(var.mode)},
            {"bsint_nulls", var.bsint_nulls},
            {"si_cancellation_db", var.si_cancellation_db},
            {"cli_suppression_db", var.cli_suppression_db},
            {"traffic_checksum", th},
            {"fading_checksum", fd},
            {"sum_p50_bps", q(cdfs[v].sum, 0.5)},
            {"ul_p05_bps", q(cdfs[v].ul, 0.05)},
            {"ul_p50_bps", q(cdfs[v].ul, 0.5)},
            {"dl_p50_bps", q(cdfs[v].dl, 0.5)},
        });
    }
    std::ofstream(dir / "metadata.json") << meta.dump(2) << '\n';

    char line[160];
    std::snprintf(line, sizeof line, "%-14s %14s %14s %14s %14s\n", "variant", "sum_p50_Mbps",
                  "ul_p05_Mbps", "ul_p50_Mbps", "dl_p50_Mbps");
    out << line;
    for (std::size_t v = 0; v < cdfs.size(); ++v) {
        const auto q = [](const EmpiricalCdf& c, double p) {
            return c.empty() ? std::nan("") : percentile(c, p) / 1e6;
        };
        std::snprintf(line, sizeof line, "%-14s %14.3f %14.3f %14.3f %14.3f\n",
                      result.variants[v].name.c_str(), q(cdfs[v].sum, 0.5), q(cdfs[v].ul, 0.05),
                      q(cdfs[v].ul, 0.5), q(cdfs[v].dl, 0.5));
        out << line;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Multi-cell full-duplex / dynamic-TDD / half-duplex system simulator", "fdsim"};
    app.set_version_flag("--version", FDSIM_VERSION);

    std::string scenario = "uma200";
    std::string mode = "fd";
    int bsint = 0;
    std::string traffic;
    int drops = 10;
    int slots = 50;
    std::uint64_t seed = 1;
    std::string sweep_spec;
    bool paired = false;
    std::string out_dir = "fdsim_out";
    std::vector<std::string> sets;
    int workers = 1;
    bool no_reports = false;

    app.add_option("--scenario", scenario, "Preset (uma500, uma200) or path to a key = value config file")
        ->capture_default_str();
    app.add_option("--mode", mode, "hd, dtdd, fd, or all (the 7 standard variants)")
        ->check(CLI::IsMember({"hd", "dtdd", "fd", "all"}))
        ->capture_default_str();
    auto* bsint_opt = app.add_option("--bsint", bsint, "BS receive nulls per UL stream")
                          ->check(CLI::NonNegativeNumber);
    app.add_option("--traffic", traffic, "low, medium, or custom=U");
    app.add_option("--drops", drops, "Independent user drops")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--slots", slots, "Slots per drop")->check(CLI::PositiveNumber)->capture_default_str();
    auto* seed_opt = app.add_option("--seed", seed, "Master seed");
    app.add_option("--sweep", sweep_spec, "key=start:step:stop, one campaign per point");
    app.add_flag("--paired", paired, "Run all variants on one shared set of channel draws");
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    app.add_option("--set", sets, "Override a config key: key=value (repeatable)");
    app.add_option("--workers", workers, "Threads over drops")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_flag("--no-reports", no_reports, "Skip the per-receiver CSV");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        ScenarioConfig config;
        if (scenario == "uma500" || scenario == "uma200") {
            config = preset_by_name(scenario);
        }
        else {
            config = load_config_file(scenario);
        }
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("--set expects key=value, got '" + s + "'");
            }
            set_config_value(config, resolve_key(s.substr(0, eq)), s.substr(eq + 1));
        }
        if (!traffic.empty()) {
            config.utilization = parse_traffic(traffic);
        }
        if (*bsint_opt) {
            config.bsint_nulls = bsint;
        }
        if (*seed_opt) {
            config.seed = seed;
        }
        if (mode != "all") {
            config.duplex_mode = parse_duplex_mode(mode);
        }
        if (mode == "hd" && config.bsint_nulls > 0) {
            if (*bsint_opt) {
                throw ConfigError("--bsint does not apply to hd");
            }
            config.bsint_nulls = 0;
        }
        config.validate();

        RunOptions opts;
        opts.paired = paired;
        opts.write_reports = !no_reports;
        opts.campaign = CampaignOptions{drops, slots, workers};

        std::vector<std::pair<fs::path, ScenarioConfig>> points;
        if (sweep_spec.empty()) {
            points.emplace_back(fs::path(out_dir), config);
        }
        else {
            const Sweep sw = parse_sweep(sweep_spec);
            for (const double v : sw.values) {
                ScenarioConfig c = config;
                set_config_value(c, sw.key, format_value(v));
                c.validate();
                points.emplace_back(fs::path(out_dir) / (sw.key + "=" + format_value(v)), c);
            }
        }

        for (const auto& [dir, c] : points) {
            const auto variants = pick_variants(c, mode);
            const auto t0 = std::chrono::steady_clock::now();
            const CampaignResult result = paired ? run_campaign(c, variants, opts.campaign)
                                                 : run_campaign_unpaired(c, variants, opts.campaign);
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            out << "== " << dir.string() << " (" << result.reports.size() << " reports, "
                << format_value(secs) << " s)\n";
            write_outputs(dir, result, opts, out);
        }
        return 0;
    }
    catch (const ConfigError& e) {
        err << "fdsim: configuration error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception& e) {
        err << "fdsim: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace fdsim
