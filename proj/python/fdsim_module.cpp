#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "fdsim/beamforming.hpp"
#include "fdsim/config.hpp"
#include "fdsim/engine.hpp"
#include "fdsim/metrics.hpp"
#include "fdsim/propagation.hpp"
#include "fdsim/traffic.hpp"

namespace py = pybind11;
using namespace fdsim;

namespace {

template <typename F>
py::array_t<double> column(const std::vector<ReceiverReport>& rs, F get)
{
    py::array_t<double> out(static_cast<py::ssize_t>(rs.size()));
    auto v = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < rs.size(); ++i) {
        v(static_cast<py::ssize_t>(i)) = static_cast<double>(get(rs[i]));
    }
    return out;
}

std::vector<Variant> resolve_variants(const ScenarioConfig& config, const std::string& which)
{
    if (which == "all") {
        return standard_variants(config);
    }
    if (which == "config") {
        return {Variant::from_config(config)};
    }
    throw ConfigError("variants must be 'all' or 'config'");
}

py::dict campaign(const ScenarioConfig& config, const std::string& variants, int drops, int slots,
                  int workers, bool paired)
{
    const auto vs = resolve_variants(config, variants);
    CampaignResult res;
    {
        py::gil_scoped_release release;
        const CampaignOptions opts{drops, slots, workers};
        res = paired ? run_campaign(config, vs, opts) : run_campaign_unpaired(config, vs, opts);
    }
    const auto& r = res.reports;
    py::dict reports;
    reports["drop"] = column(r, [](const auto& x) { return x.drop; });
    reports["slot"] = column(r, [](const auto& x) { return x.slot; });
    reports["variant"] = column(r, [](const auto& x) { return x.variant; });
    reports["cell"] = column(r, [](const auto& x) { return x.cell; });
    reports["user"] = column(r, [](const auto& x) { return x.user; });
    reports["is_dl"] = column(r, [](const auto& x) { return x.dir == LinkDir::Dl; });
    reports["stream"] = column(r, [](const auto& x) { return x.stream; });
    reports["sinr_db"] = column(r, [](const auto& x) { return x.sinr_db; });
    reports["throughput_bps"] = column(r, [](const auto& x) { return x.throughput_bps; });
    reports["desired_w"] = column(r, [](const auto& x) { return x.breakdown.desired_w; });
    reports["noise_w"] = column(r, [](const auto& x) { return x.breakdown.noise_w; });
    reports["si_w"] = column(r, [](const auto& x) { return x.breakdown.si_residual_w; });
    reports["bs2bs_w"] = column(r, [](const auto& x) { return x.breakdown.bs_to_bs_w; });
    reports["ue2ue_intra_w"] = column(r, [](const auto& x) { return x.breakdown.ue_to_ue_intra_w; });
    reports["ue2ue_inter_w"] = column(r, [](const auto& x) { return x.breakdown.ue_to_ue_inter_w; });
    reports["codir_w"] = column(r, [](const auto& x) { return x.breakdown.co_direction_w; });

    py::list per_variant;
    const auto cdfs = variant_cdfs(res);
    for (std::size_t v = 0; v < vs.size(); ++v) {
        py::dict d;
        d["name"] = vs[v].name;
        d["mode"] = std::string(to_string(vs[v].mode));
        d["bsint_nulls"] = vs[v].bsint_nulls;
        d["traffic_checksum"] = res.traffic_checksum[v];
        d["fading_checksum"] = res.fading_checksum[v];
        d["sum_throughput"] = cdfs[v].sum.sorted();
        d["ul_throughput"] = cdfs[v].ul.sorted();
        d["dl_throughput"] = cdfs[v].dl.sorted();
        d["ul_user_throughput"] = cdfs[v].ul_user.sorted();
        d["dl_user_throughput"] = cdfs[v].dl_user.sorted();
        per_variant.append(d);
    }
    py::dict out;
    out["variants"] = per_variant;
    out["reports"] = reports;
    out["n_drops"] = res.n_drops;
    out["n_slots"] = res.n_slots;
    return out;
}

}  // namespace

PYBIND11_MODULE(_fdsim, m)
{
    m.doc() = "Multi-cell full-duplex / dynamic-TDD / half-duplex system simulator";

    static py::exception<ConfigError> config_error(m, "ConfigError", PyExc_ValueError);
    static py::exception<DomainError> domain_error(m, "DomainError", PyExc_ValueError);
    static py::exception<DegenerateChannelError> degenerate(m, "DegenerateChannelError", PyExc_ArithmeticError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        }
        catch (const ConfigError& e) {
            py::set_error(config_error, e.what());
        }
        catch (const DomainError& e) {
            py::set_error(domain_error, e.what());
        }
        catch (const DegenerateChannelError& e) {
            py::set_error(degenerate, e.what());
        }
    });

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def("__getitem__", [](const ScenarioConfig& c, const std::string& k) { return get_config_value(c, k); })
        .def("__setitem__",
             [](ScenarioConfig& c, const std::string& k, const py::object& v) {
                 set_config_value(c, k, py::str(v).cast<std::string>());
             })
        .def_static("keys", &config_keys)
        .def("validate", &ScenarioConfig::validate)
        .def("copy", [](const ScenarioConfig& c) { return c; })
        .def("__str__", [](const ScenarioConfig& c) { return format_config(c); })
        .def_readwrite("utilization", &ScenarioConfig::utilization)
        .def_readwrite("seed", &ScenarioConfig::seed)
        .def_readwrite("bsint_nulls", &ScenarioConfig::bsint_nulls)
        .def_readwrite("si_cancellation_db", &ScenarioConfig::si_cancellation_db)
        .def_readwrite("cli_suppression_db", &ScenarioConfig::cli_suppression_db);

    m.def("preset", [](const std::string& name) { return preset_by_name(name); }, py::arg("name"));
    m.def("load_config", [](const std::string& path) { return load_config_file(path); }, py::arg("path"));
    m.def("parse_config", [](const std::string& text) { return parse_config_text(text); }, py::arg("text"));

    m.def("pathloss_uma", &pathloss_uma, py::arg("d_2d_m"), py::arg("carrier_hz"), py::arg("h_bs_m"),
          py::arg("h_ue_m"), py::arg("los"), py::arg("min_distance_m") = kDefaultMinDistanceM);
    m.def("los_probability", &los_probability, py::arg("d_2d_m"));
    m.def("free_space_pathloss", &free_space_pathloss, py::arg("d_m"), py::arg("carrier_hz"));

    m.def("zf_precoder", [](const CMatrix& h) { return zf_precoder(h).beams; }, py::arg("h_effective"));
    m.def("bsint_combiner",
          [](const CVector& h, const std::vector<CVector>& dirs) { return bsint_combiner(h, dirs); },
          py::arg("h_desired"), py::arg("interferer_dirs"));

    m.def("calibrate_activity",
          [](double u, double ratio) {
              const auto p = calibrate_activity(u, ratio);
              return py::make_tuple(p.ul, p.dl);
          },
          py::arg("utilization"), py::arg("dl_to_ul_ratio") = 2.0);

    m.def("thermal_noise_w", &thermal_noise_w, py::arg("bandwidth_hz"), py::arg("noise_figure_db"));
    m.def("percentile", [](std::vector<double> x, double p) { return percentile(EmpiricalCdf(std::move(x)), p); },
          py::arg("samples"), py::arg("p"));
    m.def("relative_gain",
          [](std::vector<double> a, std::vector<double> b, double p) {
              return relative_gain(EmpiricalCdf(std::move(a)), EmpiricalCdf(std::move(b)), p);
          },
          py::arg("a"), py::arg("b"), py::arg("p"));

    m.def("run_campaign", &campaign, py::arg("config"), py::arg("variants") = "all", py::arg("drops") = 10,
          py::arg("slots") = 50, py::arg("workers") = 1, py::arg("paired") = true,
          "Run the variants of `config` and return per-receiver columns plus per-variant CDF samples.");
}
