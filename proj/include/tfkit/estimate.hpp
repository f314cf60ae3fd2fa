#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace tfkit {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Growth-rate estimate assembled from log-counts at increasing depths.
/// headline() is min_n L_n/n, a certified upper bound whenever the underlying
/// count is submultiplicative; accelerated() removes the O(log C / n) offset by
/// differencing consecutive logs, with one Aitken step when enough terms exist.
class EstimateTrace {
  public:
    EstimateTrace() = default;
    EstimateTrace(std::string quantity, double eps = 0.0, bool subadditive = true)
        : quantity_(std::move(quantity)), eps_(eps), subadditive_(subadditive) {}

    /// Record ln(count or sum) at depth n. Depths must strictly increase.
    void add(int n, double log_value);

    bool empty() const { return ns_.empty(); }
    const std::vector<int>& depths() const { return ns_; }
    const std::vector<double>& logs() const { return logs_; }
    double eps() const { return eps_; }
    const std::string& quantity() const { return quantity_; }
    bool certified_upper_bound() const { return subadditive_; }

    /// Per-depth rate L_n/n at the recorded index.
    double rate(std::size_t i) const { return logs_[i] / ns_[i]; }

    double headline() const;
    double accelerated() const;
    /// Value used in identity and inequality comparisons.
    double best() const { return accelerated(); }

    void note(const std::string& key, const std::string& value) { meta_[key] = value; }
    const std::map<std::string, std::string>& notes() const { return meta_; }

    nlohmann::json to_json() const;

  private:
    std::string quantity_;
    double eps_ = 0.0;
    bool subadditive_ = true;
    std::vector<int> ns_;
    std::vector<double> logs_;
    std::map<std::string, std::string> meta_;
};

/// Limit over a metric-resolution ladder: per-eps traces, headline at the
/// finest eps (the per-eps values are monotone in eps for spanning/separated
/// counts, so the finest entry is the sup over the ladder).
class LadderEstimate {
  public:
    void add(EstimateTrace trace) { traces_.push_back(std::move(trace)); }

    const std::vector<EstimateTrace>& traces() const { return traces_; }
    bool empty() const { return traces_.empty(); }

    double headline() const;
    double accelerated() const;
    double best() const { return accelerated(); }

    nlohmann::json to_json() const;

  private:
    std::vector<EstimateTrace> traces_;
};

/// Shared depth and resolution ladders for the finite-net computations.
struct NetSchedule {
    std::vector<double> eps_ladder; // empty when no metric net is involved
    int n_max = 20;

    static NetSchedule shifts(int n_max = 20);          // no eps ladder
    static NetSchedule metric(int n_max = 14);          // eps = 2^-4 .. 2^-10
    static NetSchedule metric_coarse(int n_max = 10);   // eps = 2^-4 .. 2^-7
};

} // namespace tfkit
