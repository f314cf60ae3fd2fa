#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tfkit/system.hpp"

namespace tfkit {

/// Empirical-frequency essentiality verdict. A POSITIVE carries the probe
/// whose orbit keeps visiting the ball; a NEGATIVE is only a statement at the
/// probed resolution, never a proof.
struct EssentialVerdict {
    bool positive = false;
    std::optional<Point> witness;
    double frequency = 0.0;
    std::string str() const;
};

/// Certifies x essential when some probe orbit's visit frequency to the
/// radius-ball, measured over trailing windows, exceeds 1/(2*horizon) for at
/// least half of the tail checkpoints. Transient early visits do not count.
EssentialVerdict is_essential(const SystemModel& S, const Point& x, double radius,
                              int horizon, const std::vector<Point>& probes);

/// Exact cycle union for finite maps. For metric models: grid points passing
/// is_essential against a probe subgrid, merged with the declared fixture
/// answer when one is recorded (certified-candidate semantics).
std::vector<Point> essential_set(const SystemModel& S, double radius, int horizon,
                                 int resolution);

/// Decreasing non-wandering chain Omega_1 >= Omega_2 >= ..., exact on finite
/// maps (stabilizes at the periodic set immediately).
std::vector<std::vector<Point>> nonwandering_chain(const SystemModel& S,
                                                   int max_levels);

/// Depth-m admissible words of the Cantor fixture, each certified
/// non-wandering by an explicit returning trajectory w 0^k w 0^inf.
std::vector<std::vector<int>> cantor_nonwandering_words(const CantorShift& S,
                                                        int depth);

} // namespace tfkit
