#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tfkit/estimate.hpp"
#include "tfkit/observable.hpp"
#include "tfkit/system.hpp"

namespace tfkit {

/// phi_x = A* delta_x: the discrete functional at a base point, atoms living
/// in alpha^{-1}(x). Non-discrete branches with nonvanishing weight are
/// reported structurally instead of being sampled.
struct FunctionalAtPoint {
    Point base;
    std::vector<std::pair<Point, double>> atoms;
    std::vector<std::array<double, 2>> interval_supports;
};

/// Weighted transfer operator (Af)(x) = sum_{y in alpha^{-1}x} a(y) f(y).
/// On the square fixture the operator is the single-branch composition with
/// the inner map beta, the branch weight playing the cocycle.
class TransferOperator {
  public:
    enum class Form { Preimage, Composition };

    TransferOperator(SystemPtr host, Observable cocycle, Form form);

    const SystemPtr& host() const { return host_; }
    const Observable& cocycle() const { return cocycle_; }
    Form form() const { return form_; }
    const std::optional<Subset>& restriction() const { return restriction_; }

    /// phi_{Y,x} when a restriction is installed, phi_x otherwise.
    FunctionalAtPoint functional_at(const Point& x) const;

    /// (A^n 1)(x) by exact preimage-tree recursion.
    double iterate_one(const Point& x, int n) const;

    TransferOperator restricted_to(Subset Y) const;

  private:
    SystemPtr host_;
    Observable cocycle_;
    Form form_;
    std::optional<Subset> restriction_;
};

/// Builds the Perron-Frobenius operator with weight a. Hosts with a constant
/// (non-discrete-preimage) branch are rejected unless a vanishes on it.
TransferOperator perron_frobenius(SystemPtr S, Observable a);

/// A_g = A(g . ): multiplies the cocycle by the nonnegative weight g.
TransferOperator with_weight(const TransferOperator& T, const Observable& g);

FunctionalAtPoint functional_family(const TransferOperator& T, const Point& x);

/// Trace of s_n = (1/n) ln ||A^n 1||: exact matrix/tree sums on symbolic and
/// finite hosts, grid sups on metric hosts. -inf is a first-class value.
EstimateTrace spectral_potential(const TransferOperator& T, int n_max);

/// Exact per-depth logs of max_u (A^n 1)(u) and sum_u (A^n 1)(u) on a
/// subshift with cylinder weight a; `extend` seeds the iteration with the
/// count of admissible word extensions of that length (used by the net-based
/// estimators to account for metric resolution). -inf entries mark dead
/// weight support.
struct ShiftIteration {
    std::vector<double> log_max, log_sum; // index n-1 holds depth n
    int states = 0;
};
ShiftIteration shift_transfer_iteration(const Subshift& S, const Observable& a,
                                        int n_max, int extend = 0,
                                        const std::vector<std::vector<int>>* restrict_to = nullptr);

/// ln of the dominant eigenvalue of the depth-k weighted transition matrix,
/// power iteration to 1e-12 residual; -inf for the zero matrix.
double sft_spectral_oracle(const Subshift& S, const Observable& a);

struct CompatibilityVerdict {
    bool compatible = false;
    std::optional<Point> witness;
    double jump = 0.0;
    std::string note;
    std::string str() const;
};

/// Probes *-weak continuity of x -> phi_{Y,x} along ordered chains through Y
/// with a hat-function test family; jumps surviving bisection refinement are
/// certified INCOMPATIBLE with a witness, quiet scans are COMPATIBLE at the
/// probed resolution.
CompatibilityVerdict check_compatibility(const TransferOperator& T, const Subset& Y,
                                         int resolution);

/// A_Y: atoms of phi_x intersected with Y. Refuses incompatible pairs,
/// carrying the witness.
TransferOperator trace_operator(const TransferOperator& T, const Subset& Y);

/// Branch-weight function of the operator on a subset with discrete preimages.
Observable cocycle_of(const TransferOperator& T, const Subset& on);

struct PointFlags {
    bool lip = false, lop = false, lhp = false;
};

/// Local injectivity / openness / homeomorphism flags from branch-structure
/// analysis, optionally relative to a restriction subset.
PointFlags classify_point(const SystemModel& S, const Point& x,
                          const Subset* within = nullptr);

} // namespace tfkit
