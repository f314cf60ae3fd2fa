#include "tfkit/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tfkit {

void EstimateTrace::add(int n, double log_value) {
    if (n <= 0) throw std::invalid_argument("EstimateTrace: depth must be positive");
    if (!ns_.empty() && n <= ns_.back())
        throw std::invalid_argument("EstimateTrace: depths must strictly increase");
    ns_.push_back(n);
    logs_.push_back(log_value);
}

double EstimateTrace::headline() const {
    if (ns_.empty()) throw std::logic_error("EstimateTrace: empty");
    if (!subadditive_) return logs_.back() / ns_.back();
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ns_.size(); ++i) m = std::min(m, rate(i));
    return m;
}

double EstimateTrace::accelerated() const {
    if (ns_.empty()) throw std::logic_error("EstimateTrace: empty");
    // Consecutive-depth log differences strip the n-independent prefactor.
    std::vector<double> diffs;
    for (std::size_t i = 1; i < ns_.size(); ++i)
        if (ns_[i] == ns_[i - 1] + 1)
            diffs.push_back(logs_[i] - logs_[i - 1]);
    if (diffs.empty()) return logs_.back() / ns_.back();
    for (const double d : diffs)
        if (!std::isfinite(d)) return headline();
    const std::size_t k = diffs.size();
    if (k >= 3) {
        // One Aitken step on the tail; geometric convergence of the diffs
        // is common for the matrix-power and grid-sum sequences here.
        const double d0 = diffs[k - 3], d1 = diffs[k - 2], d2 = diffs[k - 1];
        const double denom = (d2 - d1) - (d1 - d0);
        if (std::fabs(denom) > 1e-12 * std::max(1.0, std::fabs(d2))) {
            const double a = d2 - (d2 - d1) * (d2 - d1) / denom;
            // Guard against wild extrapolation when the diffs are not settling.
            if (std::fabs(a - d2) <= std::fabs(d2 - d1) + 1e-9) return a;
        }
    }
    return diffs.back();
}

nlohmann::json EstimateTrace::to_json() const {
    nlohmann::json j;
    j["quantity"] = quantity_;
    if (eps_ > 0.0) j["eps"] = eps_;
    j["depths"] = ns_;
    nlohmann::json logs = nlohmann::json::array();
    for (const double v : logs_)
        logs.push_back(std::isfinite(v) ? nlohmann::json(v) : nlohmann::json("-inf"));
    j["logs"] = logs;
    const double h = headline(), a = accelerated();
    j["headline"] = std::isfinite(h) ? nlohmann::json(h) : nlohmann::json("-inf");
    j["accelerated"] = std::isfinite(a) ? nlohmann::json(a) : nlohmann::json("-inf");
    j["certified_upper_bound"] = subadditive_;
    if (!meta_.empty()) j["notes"] = meta_;
    return j;
}

double LadderEstimate::headline() const {
    if (traces_.empty()) throw std::logic_error("LadderEstimate: empty");
    return traces_.back().headline();
}

double LadderEstimate::accelerated() const {
    if (traces_.empty()) throw std::logic_error("LadderEstimate: empty");
    return traces_.back().accelerated();
}

nlohmann::json LadderEstimate::to_json() const {
    nlohmann::json j;
    j["traces"] = nlohmann::json::array();
    for (const auto& t : traces_) j["traces"].push_back(t.to_json());
    const double h = headline(), a = accelerated();
    j["headline"] = std::isfinite(h) ? nlohmann::json(h) : nlohmann::json("-inf");
    j["accelerated"] = std::isfinite(a) ? nlohmann::json(a) : nlohmann::json("-inf");
    return j;
}

NetSchedule NetSchedule::shifts(int n_max) { return {{}, n_max}; }

NetSchedule NetSchedule::metric(int n_max) {
    NetSchedule s;
    for (int k = 4; k <= 10; ++k) s.eps_ladder.push_back(std::ldexp(1.0, -k));
    s.n_max = n_max;
    return s;
}

NetSchedule NetSchedule::metric_coarse(int n_max) {
    NetSchedule s;
    for (int k = 4; k <= 7; ++k) s.eps_ladder.push_back(std::ldexp(1.0, -k));
    s.n_max = n_max;
    return s;
}

} // namespace tfkit
