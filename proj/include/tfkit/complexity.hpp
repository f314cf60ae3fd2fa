#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tfkit/estimate.hpp"
#include "tfkit/observable.hpp"
#include "tfkit/system.hpp"

namespace tfkit {

/// Greedy d_n-net over the subset's standing sample: certified spanning for
/// the sample, within the greedy factor of minimal.
std::vector<Point> spanning_set(const SystemModel& S, const Subset& Y, int n,
                                double eps, int resolution = 512);

/// Greedy maximal d_n-packing: every kept pair strictly eps-apart.
std::vector<Point> separated_set(const SystemModel& S, const Subset& Y, int n,
                                 double eps, int resolution = 512);

/// Growth rate of (n,eps)-spanning Birkhoff-product sums over the essential
/// restriction; entropy is pressure at a == 1.
LadderEstimate topological_pressure(const SystemModel& S, const Observable& a,
                                    const NetSchedule& sched);
LadderEstimate topological_entropy(const SystemModel& S, const NetSchedule& sched);

/// omega(alpha): growth of sup_x |preimages within the essential set|.
EstimateTrace inverse_rami_rate(const SystemModel& S, int n_max);

/// gamma(alpha): growth of the minimal forward-image size of spanning sets;
/// uses the pulled-back net when the non-contracting pull-back applies,
/// greedy nets otherwise. An upper estimate by construction.
LadderEstimate forward_entropy(const SystemModel& S, const NetSchedule& sched);

/// ell(alpha, a): growth of sup over essential x of the weighted
/// preimage-tree sums Phi_n.
EstimateTrace essential_spectral_potential(const SystemModel& S, const Observable& a,
                                           int n_max);

struct PropertyStarVerdict {
    bool certified = false;
    double radius = 0.0; // verified non-contracting radius
    int net_size = 0;    // |F(eps)|
    std::string note;
};

/// Verifies a non-contracting radius on sampled close pairs, then checks by
/// sampling that the pulled-back nets alpha^{-n}(F(eps)) stay (n,eps)-spanning.
PropertyStarVerdict check_property_star(const SystemModel& S, double eps, int n_max);

/// Largest ladder radius r with d(alpha x, alpha y) >= d(x,y) on all sampled
/// pairs closer than r; nullopt when every candidate fails.
std::optional<double> non_contracting_radius(const SystemModel& S);

} // namespace tfkit
