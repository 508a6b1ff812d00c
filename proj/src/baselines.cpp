#include "bpdep/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bpdep {

std::string to_string(Measure m) {
    switch (m) {
        case Measure::Pearson: return "pearson";
        case Measure::Spearman: return "spearman";
        case Measure::MutualInformation: return "mutual-information";
        case Measure::UncertaintyCoefficient: return "uncertainty-coefficient";
    }
    return "unknown";
}

namespace {

BaselineScore correlation(Measure m, const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    BaselineScore s{m, 0.0, false};
    if (!(sxx > 0.0) || !(syy > 0.0)) return s;
    s.value = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    s.defined = true;
    return s;
}

std::vector<double> mid_ranks(const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> rank(v.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
        i = j + 1;
    }
    return rank;
}

}  // namespace

BaselineScore pearson(const SampleTable& samples) {
    return correlation(Measure::Pearson, samples.x().numeric(), samples.y().numeric());
}

BaselineScore spearman(const SampleTable& samples) {
    return correlation(Measure::Spearman, mid_ranks(samples.x().numeric()), mid_ranks(samples.y().numeric()));
}

double entropy(const MarginalPmf& pmf) {
    double h = 0.0;
    for (double p : pmf.probabilities()) h -= p * std::log(p);
    return h;
}

BaselineScore mutual_information(const JointPmf& joint) {
    const auto& px = joint.marginal_x().probabilities();
    const auto& py = joint.marginal_y().probabilities();
    double mi = 0.0;
    for (std::size_t i = 0; i < joint.rows(); ++i)
        for (std::size_t j = 0; j < joint.cols(); ++j) {
            const double p = joint.at(i, j);
            if (p > 0.0) mi += p * std::log(p / (px[i] * py[j]));
        }
    return {Measure::MutualInformation, std::max(0.0, mi), true};
}

BaselineScore uncertainty_coefficient(const JointPmf& joint, Direction direction) {
    const MarginalPmf& target = direction == Direction::YonX ? joint.marginal_y() : joint.marginal_x();
    BaselineScore s{Measure::UncertaintyCoefficient, 0.0, false};
    if (target.size() <= 1) return s;
    const double h = entropy(target);
    s.value = std::clamp(mutual_information(joint).value / h, 0.0, 1.0);
    s.defined = true;
    return s;
}

}  // namespace bpdep
