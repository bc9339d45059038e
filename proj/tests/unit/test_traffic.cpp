#include <doctest.h>

#include <cmath>
#include <set>

#include "fdsim/traffic.hpp"

using namespace fdsim;

TEST_CASE("activity calibration")
{
    for (const double u : {0.0, 0.1, 0.3, 0.5, 0.9, 0.999}) {
        const auto p = calibrate_activity(u, 2.0);
        CHECK(p.busy() == doctest::Approx(u).epsilon(1e-12));
        CHECK(p.dl == doctest::Approx(std::min(1.0, 2.0 * p.ul)).epsilon(1e-12));
    }
    const auto full = calibrate_activity(1.0, 2.0);
    CHECK(full.ul == 1.0);
    CHECK(full.dl == 1.0);
    const auto zero = calibrate_activity(0.0, 2.0);
    CHECK(zero.ul == 0.0);
    CHECK(zero.dl == 0.0);
    CHECK_THROWS_AS(calibrate_activity(1.2, 2.0), ConfigError);
    CHECK_THROWS_AS(calibrate_activity(0.5, 0.0), ConfigError);
}

TEST_CASE("sampled activity matches utilization and the DL:UL ratio")
{
    const auto probs = calibrate_activity(0.5, 2.0);
    Stream s(11, StreamTag::Test, {1});
    int busy = 0;
    int ul = 0;
    int dl = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const auto a = sample_activity(probs, s);
        busy += (a.ul || a.dl) ? 1 : 0;
        ul += a.ul ? 1 : 0;
        dl += a.dl ? 1 : 0;
    }
    CHECK(static_cast<double>(busy) / n == doctest::Approx(0.5).epsilon(0.02));
    CHECK(static_cast<double>(dl) / ul == doctest::Approx(2.0).epsilon(0.05));

    Stream z(11, StreamTag::Test, {2});
    const auto none = calibrate_activity(0.0, 2.0);
    const auto all = calibrate_activity(1.0, 2.0);
    for (int i = 0; i < 1000; ++i) {
        const auto a = sample_activity(none, z);
        CHECK_FALSE((a.ul || a.dl));
        const auto b = sample_activity(all, z);
        CHECK((b.ul && b.dl));
    }
}

TEST_CASE("D-TDD direction rule")
{
    CHECK(dtdd_direction({true, false, 0.1}, 2.0) == Direction::Ul);
    CHECK(dtdd_direction({false, true, 0.9}, 2.0) == Direction::Dl);
    CHECK(dtdd_direction({false, false, 0.5}, 2.0) == Direction::Idle);
    Stream s(11, StreamTag::Test, {3});
    int dl = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        dl += dtdd_direction({true, true, s.uniform()}, 2.0) == Direction::Dl ? 1 : 0;
    }
    CHECK(static_cast<double>(dl) / n == doctest::Approx(2.0 / 3.0).epsilon(0.02));
}

namespace {

Deployment toy(int users_cell0, int users_cell1)
{
    Deployment d = build_hex_layout(200.0, 7, 1);
    for (int i = 0; i < users_cell0; ++i) {
        d.users.push_back(User{{50.0 + i, 0.0}, 1.5, 0});
    }
    for (int i = 0; i < users_cell1; ++i) {
        d.users.push_back(User{{200.0, 50.0 + i}, 1.5, 1});
    }
    d.los.assign(d.users.size() * d.sites.size(), 0);
    return d;
}

}  // namespace

TEST_CASE("slot scheduling per duplex mode")
{
    const auto cfg = preset_uma200();
    const auto d = toy(5, 1);
    const RoundRobin rr(d, cfg.seed, 0);
    std::vector<CellActivity> act(d.cells.size(), CellActivity{true, true, 0.9});

    const auto fd = schedule_slot(DuplexMode::Fd, cfg, rr, act, 0);
    CHECK(fd.cells[0].direction == Direction::Both);
    CHECK(fd.cells[0].ul_bandwidth_hz == 40e6);
    CHECK(fd.cells[0].dl_bandwidth_hz == 40e6);
    CHECK(fd.cells[0].ul_user != fd.cells[0].dl_user);
    // a lone user gets one direction, the D-TDD draw picks it
    CHECK(fd.cells[1].direction == Direction::Ul);
    CHECK(fd.cells[2].direction == Direction::Idle);

    const auto hd = schedule_slot(DuplexMode::HdFdd, cfg, rr, act, 0);
    CHECK(hd.cells[0].direction == Direction::Both);
    CHECK(hd.cells[0].ul_bandwidth_hz == 20e6);
    CHECK(hd.cells[0].dl_bandwidth_hz == 20e6);
    CHECK(hd.cells[0].ul_band == Band::UplinkHalf);
    CHECK(hd.cells[0].dl_band == Band::DownlinkHalf);

    act[0] = CellActivity{true, false, 0.0};
    const auto dt = schedule_slot(DuplexMode::Dtdd, cfg, rr, act, 0);
    CHECK(dt.cells[0].direction == Direction::Ul);
    CHECK(dt.cells[0].ul_bandwidth_hz == 40e6);
    CHECK(dt.cells[0].dl_user == -1);

    // bandwidth conservation
    for (const auto* a : {&fd, &hd, &dt}) {
        for (const auto& c : a->cells) {
            const double bw = c.ul_bandwidth_hz + c.dl_bandwidth_hz;
            CHECK(bw <= (a->mode == DuplexMode::Fd ? 80e6 : 40e6));
        }
    }
}

TEST_CASE("round robin visits every attached user")
{
    const auto d = toy(5, 2);
    const RoundRobin rr(d, 3, 1);
    std::set<int> seen_ul;
    std::set<int> seen_dl;
    for (std::uint64_t slot = 0; slot < 5; ++slot) {
        seen_ul.insert(rr.ul_pick(0, slot));
        seen_dl.insert(rr.dl_pick(0, slot));
        CHECK(rr.ul_pick(0, slot) != rr.dl_pick(0, slot));
    }
    CHECK(seen_ul == std::set<int>{0, 1, 2, 3, 4});
    CHECK(seen_dl == seen_ul);
    CHECK(rr.ul_pick(5, 0) == -1);
}

TEST_CASE("traffic draws are keyed by drop, slot and cell")
{
    const auto cfg = preset_uma200();
    const auto probs = calibrate_activity(0.5, 2.0);
    const auto a = sample_slot_activity(cfg, probs, 7, 3, 4);
    const auto b = sample_slot_activity(cfg, probs, 7, 3, 4);
    for (std::size_t c = 0; c < a.size(); ++c) {
        CHECK(a[c].ul == b[c].ul);
        CHECK(a[c].dl == b[c].dl);
        CHECK(a[c].direction_draw == b[c].direction_draw);
    }
    const auto other = sample_slot_activity(cfg, probs, 7, 3, 5);
    bool differs = false;
    for (std::size_t c = 0; c < a.size(); ++c) {
        differs = differs || a[c].direction_draw != other[c].direction_draw;
    }
    CHECK(differs);
}
