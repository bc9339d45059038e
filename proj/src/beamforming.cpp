#include "fdsim/beamforming.hpp"

#include <algorithm>
#include <numeric>

namespace fdsim {

Precoder zf_precoder(const CMatrix& h_effective)
{
    const auto streams = h_effective.rows();
    if (streams == 0 || streams > h_effective.cols()) {
        throw DegenerateChannelError("zf_precoder: need 1 <= streams <= tx antennas");
    }
    Eigen::JacobiSVD<CMatrix> svd(h_effective, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double s_max = sv(0);
    const double s_min = sv(sv.size() - 1);
    if (!(s_max > 0.0) || s_min <= kRankTolerance * s_max) {
        throw DegenerateChannelError("zf_precoder: channel is rank deficient");
    }
    CMatrix pinv = svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
    for (Eigen::Index c = 0; c < pinv.cols(); ++c) {
        pinv.col(c) /= pinv.col(c).norm();
    }
    return Precoder{std::move(pinv)};
}

CVector bsint_combiner(const CVector& h_desired, std::span<const CVector> interferer_dirs)
{
    const auto m = h_desired.size();
    if (static_cast<Eigen::Index>(interferer_dirs.size()) > m - 1) {
        throw ConfigError("bsint_combiner: " + std::to_string(interferer_dirs.size()) +
                          " nulls exceed M-1 = " + std::to_string(m - 1));
    }
    const double h_norm = h_desired.norm();
    if (!(h_norm > 0.0)) {
        throw DegenerateChannelError("bsint_combiner: desired channel is zero");
    }

    std::vector<const CVector*> live;
    for (const auto& d : interferer_dirs) {
        if (d.size() != m) {
            throw ConfigError("bsint_combiner: direction length differs from h_desired");
        }
        if (d.norm() > 0.0) {
            live.push_back(&d);
        }
    }
    if (live.empty()) {
        return h_desired / h_norm;
    }

    CMatrix dirs(m, static_cast<Eigen::Index>(live.size()));
    for (std::size_t k = 0; k < live.size(); ++k) {
        dirs.col(static_cast<Eigen::Index>(k)) = *live[k];
    }
    Eigen::ColPivHouseholderQR<CMatrix> qr(dirs);
    qr.setThreshold(kRankTolerance);
    const auto rank = qr.rank();
    const CMatrix basis = qr.householderQ() * CMatrix::Identity(m, rank);

    CVector v = h_desired - basis * (basis.adjoint() * h_desired);
    v -= basis * (basis.adjoint() * v);  // second pass keeps the nulls at round-off level
    const double v_norm = v.norm();
    if (v_norm <= kRankTolerance * h_norm) {
        throw DegenerateChannelError("bsint_combiner: desired channel lies in the nulled span");
    }
    return v / v_norm;
}

std::vector<CVector> select_null_targets(const CVector& h_desired,
                                         std::span<const NullCandidate> candidates, int n_nulls)
{
    std::vector<CVector> out;
    if (n_nulls <= 0 || candidates.empty()) {
        return out;
    }
    const double h2 = h_desired.squaredNorm();
    std::vector<double> power(candidates.size(), 0.0);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        for (const auto& d : candidates[i].dirs) {
            power[i] += std::norm(h_desired.dot(d)) / h2;
        }
    }
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (power[a] != power[b]) {
            return power[a] > power[b];
        }
        return candidates[a].cell < candidates[b].cell;
    });
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(n_nulls), order.size());
    for (std::size_t i = 0; i < take; ++i) {
        const auto& dirs = candidates[order[i]].dirs;
        out.insert(out.end(), dirs.begin(), dirs.end());
    }
    return out;
}

std::vector<double> equal_power_allocation(int n_streams, double total_power_w)
{
    if (n_streams < 1) {
        throw ConfigError("equal_power_allocation: need at least one stream");
    }
    return std::vector<double>(static_cast<std::size_t>(n_streams),
                               total_power_w / static_cast<double>(n_streams));
}

LinkBeams downlink_beams(const CMatrix& h_dl, int streams)
{
    Eigen::JacobiSVD<CMatrix> svd(h_dl, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (streams > svd.matrixU().cols()) {
        throw DegenerateChannelError("downlink_beams: more streams than channel rank");
    }
    LinkBeams beams;
    beams.ue_beams = svd.matrixU().leftCols(streams);
    beams.bs_beams = zf_precoder(beams.ue_beams.adjoint() * h_dl).beams;
    return beams;
}

CMatrix uplink_ue_precoder(const CMatrix& h_ul, int streams)
{
    Eigen::JacobiSVD<CMatrix> svd(h_ul, Eigen::ComputeThinV);
    if (streams > svd.matrixV().cols()) {
        throw DegenerateChannelError("uplink_ue_precoder: more streams than channel rank");
    }
    return svd.matrixV().leftCols(streams);
}

}  // namespace fdsim
