#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "tfkit/estimate.hpp"
#include "tfkit/measure.hpp"
#include "tfkit/transfer.hpp"

namespace tfkit {

/// tau(mu) evidence matrix: per-(n, partition-depth) values, each a certified
/// upper bound on tau; the headline is the running inf. -inf cells mark
/// mu-positive sets with vanishing pushed-forward mass.
struct TEntropyEstimate {
    std::string method; // "partition" | "radon"
    std::vector<int> ns;
    std::vector<int> depths;                // partition ladder, or stabilized depth per n
    std::vector<std::vector<double>> cells; // [n index][depth index]

    double headline() const;
    nlohmann::json to_json() const;
};

/// Partition formula: inf over n and depth-d cylinder partitions of
/// (1/n) sum_g mu[g] ln(mu[A^n g]/mu[g]); cells refine monotonically down.
/// Atomic measures use shrinking indicator cells at the atoms.
TEntropyEstimate t_entropy_partition(const TransferOperator& T,
                                     const InvariantMeasure& mu, int depth_max,
                                     int n_max);

/// Density formula: exact cylinder masses of A*^n mu, Lebesgue-decomposed
/// against mu level-by-level until the density is stable under one depth
/// refinement on 1 - 1e-9 of mu-mass, then (1/n) integral of ln density.
TEntropyEstimate t_entropy_radon(const TransferOperator& T,
                                 const InvariantMeasure& mu, int n_max);

/// Hypothesis certificates a fixture carries into the closed forms.
struct TauHypotheses {
    bool invertible_on_essential = false; // zero inverse rami-rate, continuous cocycle
    bool open_non_contracting = false;    // open non-contracting local homeomorphism
};

/// Closed forms: integral of ln rho d mu when the essential restriction is
/// invertible; plus the Kolmogorov-Sinai entropy in the open non-contracting
/// class. Throws when neither hypothesis is certified.
double t_entropy_closed_form(const TransferOperator& T, const InvariantMeasure& mu,
                             const TauHypotheses& hyp);

/// Integral of ln(cocycle) with the 0 * ln 0 = 0 convention; -inf when the
/// weight vanishes on a mu-positive set.
double integrate_log_cocycle(const InvariantMeasure& mu, const Observable& rho);

struct VariationalRow {
    std::string psi_name;
    double lambda = 0.0;       // spectral potential of the psi-weighted operator
    double family_max = 0.0;   // max over measures of mu[psi] + tau(mu)
    double optimizer_value = kNegInf; // the matrix-derived maximizing chain
    double gap = 0.0;          // lambda - max(family_max, optimizer_value)
    bool pass = false;
};

/// mu[psi] + tau(mu) against ln r(A_{rho e^psi}) per psi, over the declared
/// measure family plus the eigenvector-derived maximizing Markov chain on
/// symbolic hosts.
std::vector<VariationalRow> verify_variational_principle(
    const TransferOperator& T, const std::vector<Observable>& psis,
    const std::vector<InvariantMeasure>& measures, double tol = 1e-3);

struct DualResult {
    double value = kNegInf; // best mu[psi] - lambda(psi) found
    double tau = 0.0;       // reference tau(mu)
    double gap = 0.0;       // value + tau, <= 0 up to estimator error
    Observable best_psi;
    int iterations = 0;
};

/// sup_psi (mu[psi] - lambda(psi)) over depth-`depth` cylinder potentials by
/// ascent on the exact eigen-gradient; equals -tau(mu) at the optimum.
DualResult legendre_dual(const TransferOperator& T, const InvariantMeasure& mu,
                         int depth, int iterations = 200);

/// mu[psi] - lambda(psi) for one potential (the quantity the dual optimizes).
double dual_value(const TransferOperator& T, const InvariantMeasure& mu,
                  const Observable& psi);

} // namespace tfkit
