#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "tfkit/measure.hpp"
#include "tfkit/observable.hpp"
#include "tfkit/system.hpp"

namespace tfkit {

/// Certificates a fixture carries; identity checks degrade to NOT-APPLICABLE
/// instead of FAIL when the needed one is absent.
struct Hypotheses {
    bool local_homeo_on_essential = false;
    bool essential_compatible = false;
    bool non_contracting = false;
    bool pullback_spanning = false;      // pulled-back nets stay spanning
    bool invertible_on_essential = false; // zero inverse rami-rate

    nlohmann::json to_json() const;
};

struct Fixture {
    std::string id;
    std::string summary;
    SystemPtr system;
    Observable rho; // standing cocycle of the fixture's operator
    Hypotheses hyp;
    std::vector<Observable> psi_samples;

    nlohmann::json to_json() const;
};

const std::vector<Fixture>& fixture_catalog();
const Fixture& fixture_by_id(const std::string& id);

/// Squaring map on [0,1] with cocycle rho(x) = c + |x - 0.8|; the trace to
/// Y = [0, 0.8] is compatible exactly when c = 0.
Fixture compat_square_fixture(double rho_at_corner);

struct IdentityRow {
    std::string fixture, identity, psi_name;
    double lhs = 0.0, rhs = 0.0, gap = 0.0, tol = 0.0;
    std::string status; // PASS | FAIL | NOT-APPLICABLE
    std::string note;
};

/// One row per identity per sampled potential: the spectral potential against
/// the essential-restriction growth rate, and against topological pressure of
/// the combined potential. Hypothesis gaps yield NOT-APPLICABLE rows.
std::vector<IdentityRow> cross_check_identities(const Fixture& fx);

} // namespace tfkit
