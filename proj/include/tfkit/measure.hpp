#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "tfkit/observable.hpp"
#include "tfkit/system.hpp"

namespace tfkit {

/// Cylinder depth cap for exact integration against Markov measures.
inline constexpr int kMaxCylinderDepth = 16;

/// Shift-invariant measure in one of the closed-form families: Markov chain on
/// a subshift, uniform measure on a periodic orbit, or a point mass at a fixed
/// point.
class InvariantMeasure {
  public:
    enum class Variant { Markov, PeriodicOrbit, Dirac };

    Variant variant() const { return variant_; }
    const SystemPtr& host() const { return host_; }

    // Markov accessors.
    const std::vector<double>& stationary() const { return pi_; }
    const std::vector<std::vector<double>>& transitions() const { return P_; }
    /// mu([w_1...w_k]) = pi_{w_1} prod P_{w_i w_{i+1}}; zero off the support.
    double cylinder_mass(const std::vector<int>& w) const;

    // Atomic accessors: the cycle point list, or the single fixed point.
    const std::vector<Point>& atoms() const { return atoms_; }

    std::string describe() const;
    nlohmann::json to_json() const;

    friend InvariantMeasure markov_measure(SystemPtr S,
                                           std::vector<std::vector<double>> P);
    friend InvariantMeasure periodic_orbit_measure(SystemPtr S,
                                                   std::vector<Point> cycle);
    friend InvariantMeasure dirac_measure(SystemPtr S, Point p);

  private:
    InvariantMeasure() = default;
    Variant variant_ = Variant::Dirac;
    SystemPtr host_;
    std::vector<double> pi_;
    std::vector<std::vector<double>> P_;
    std::vector<Point> atoms_;
};

/// Stationary vector by damped power iteration to 1e-14 residual. Rejects
/// non-stochastic rows, support off the admissible transitions, and chains
/// with more than one closed communicating class (the message names them).
InvariantMeasure markov_measure(SystemPtr S, std::vector<std::vector<double>> P);

/// Uniform measure on a verified alpha-cycle.
InvariantMeasure periodic_orbit_measure(SystemPtr S, std::vector<Point> cycle);

/// Point mass at a verified fixed point.
InvariantMeasure dirac_measure(SystemPtr S, Point p);

/// Closed form for Markov (-sum pi_i P_ij ln P_ij); zero for atomic variants.
double ks_entropy(const InvariantMeasure& mu);

/// Exact integral: cylinder sums for Markov, atom averages otherwise.
double integrate(const InvariantMeasure& mu, const Observable& f);

/// delta_{y,n}: uniform mass on the first n orbit points of y.
struct EmpiricalMeasure {
    Point base;
    int horizon;
    SystemPtr host;
};

double integrate(const EmpiricalMeasure& mu, const Observable& f);

/// Exact maximum of mu[w] over invariant measures, realized on the periodic
/// family: maximum cycle mean of w on the depth-k admissibility graph.
struct ErgodicMaxResult {
    double value;
    std::vector<Point> cycle;
    InvariantMeasure measure;
};

ErgodicMaxResult max_ergodic_average(SystemPtr S, const Observable& w);

} // namespace tfkit
