#include "tfkit/fixtures.hpp"

#include <cmath>
#include <stdexcept>

#include "tfkit/complexity.hpp"
#include "tfkit/transfer.hpp"

namespace tfkit {

nlohmann::json Hypotheses::to_json() const {
    return {{"local_homeo_on_essential", local_homeo_on_essential},
            {"essential_compatible", essential_compatible},
            {"non_contracting", non_contracting},
            {"pullback_spanning", pullback_spanning},
            {"invertible_on_essential", invertible_on_essential}};
}

nlohmann::json Fixture::to_json() const {
    nlohmann::json psis = nlohmann::json::array();
    for (const auto& p : psi_samples) psis.push_back(p.name());
    return {{"id", id},
            {"summary", summary},
            {"system", system->name()},
            {"cocycle", rho.name()},
            {"hypotheses", hyp.to_json()},
            {"psi_samples", psis}};
}

Fixture compat_square_fixture(double rho_at_corner) {
    Fixture fx;
    fx.id = "compat3";
    fx.summary = "squaring map on [0,1]; trace to [0,0.8] is compatible iff the "
                 "cocycle vanishes at 0.8";
    fx.system = build_piecewise_cover({Branch{0.0, 1.0, Branch::Map::Square}},
                                      false, "squaring");
    const double c = rho_at_corner;
    fx.rho = Observable::fn1d([c](double x) { return c + std::fabs(x - 0.8); },
                              "c+|x-0.8|");
    fx.hyp.local_homeo_on_essential = true;
    fx.hyp.invertible_on_essential = true;
    fx.psi_samples = {Observable::constant(0.0)};
    return fx;
}

namespace {

std::vector<Fixture> make_catalog() {
    std::vector<Fixture> cat;
    const Observable one = Observable::constant(1.0);
    const Observable zero = Observable::constant(0.0);

    {
        Fixture fx;
        fx.id = "full2";
        fx.summary = "full shift on two symbols";
        fx.system = build_subshift(2, {{1, 1}, {1, 1}});
        fx.rho = one;
        fx.hyp = {true, true, true, true, false};
        fx.psi_samples = {zero,
                          Observable::cylinder(2, 1, {0.3, -0.2}, "psi(0.3,-0.2)")};
        cat.push_back(std::move(fx));
    }
    {
        Fixture fx;
        fx.id = "golden";
        fx.summary = "golden-mean shift (no consecutive 1-1)";
        fx.system = build_subshift(2, {{1, 1}, {1, 0}});
        fx.rho = one;
        fx.hyp = {true, true, true, true, false};
        fx.psi_samples = {zero,
                          Observable::cylinder(2, 1, {0.5, -0.1}, "psi(0.5,-0.1)")};
        cat.push_back(std::move(fx));
    }
    {
        Fixture fx;
        fx.id = "doubling";
        fx.summary = "angle doubling on the circle, cocycle 0.5 + x/2";
        fx.system = build_doubling_map();
        fx.rho = Observable::fn1d([](double x) { return 0.5 + x / 2.0; }, "0.5+x/2");
        fx.hyp = {true, true, true, true, false};
        fx.psi_samples = {
            zero,
            Observable::fn1d([](double x) { return x; }, "x"),
            Observable::fn1d([](double x) { return std::sin(2 * M_PI * x) / 4; },
                             "sin(2pix)/4"),
            Observable::fn1d([](double x) { return 0.3 - x / 2; }, "0.3-x/2"),
            Observable::fn1d([](double x) { return x * x; }, "x^2"),
        };
        cat.push_back(std::move(fx));
    }
    {
        Fixture fx;
        fx.id = "tripling";
        fx.summary = "angle tripling on the circle";
        fx.system = build_tripling_map();
        fx.rho = one;
        fx.hyp = {true, true, true, true, false};
        fx.psi_samples = {zero};
        cat.push_back(std::move(fx));
    }
    {
        Fixture fx;
        fx.id = "rotation";
        fx.summary = "irrational circle rotation";
        fx.system = build_circle_rotation((std::sqrt(5.0) - 1.0) / 2.0);
        fx.rho = one;
        fx.hyp = {true, true, true, true, true};
        fx.psi_samples = {zero};
        cat.push_back(std::move(fx));
    }
    {
        Fixture fx;
        fx.id = "e11";
        fx.summary = "doubling on [0,1/2], constant 1 on [1/2,1]; essential set {0,1}";
        fx.system = build_e11_map();
        fx.rho = one;
        fx.hyp = {};
        fx.psi_samples = {zero};
        cat.push_back(std::move(fx));
    }
    {
        Fixture fx;
        fx.id = "cantor";
        fx.summary = "windowed two-symbol shift with sparse twos; essential set is "
                     "the zero sequence";
        fx.system = build_cantor_fixture();
        fx.rho = one;
        fx.hyp = {true, true, true, true, true};
        fx.psi_samples = {zero};
        cat.push_back(std::move(fx));
    }
    {
        Fixture fx;
        fx.id = "square";
        fx.summary = "two-triangle map on the unit square; spectral potential and "
                     "pressure separate";
        fx.system = build_square_fixture();
        fx.rho = one;
        fx.hyp = {}; // not a local homeomorphism, not compatible
        fx.psi_samples = {Observable::fn2d(
            [](const std::array<double, 2>& x) { return x[0] + x[1]; }, "x1+x2")};
        cat.push_back(std::move(fx));
    }
    {
        Fixture fx;
        fx.id = "ladder";
        fx.summary = "ladder of shrinking rungs over [0,1]";
        fx.system = build_ladder_fixture();
        fx.rho = one;
        fx.hyp.non_contracting = true; // other certificates left open
        fx.psi_samples = {zero};
        cat.push_back(std::move(fx));
    }
    cat.push_back(compat_square_fixture(0.5));
    {
        Fixture fx;
        fx.id = "contraction";
        fx.summary = "halving map on [0,1]; strictly contracting";
        fx.system = build_piecewise_cover(
            {Branch{0.0, 1.0, Branch::Map::Affine, 0.5, 0.0}}, false, "halving");
        fx.rho = one;
        fx.hyp.local_homeo_on_essential = true;
        fx.hyp.invertible_on_essential = true;
        fx.psi_samples = {zero};
        cat.push_back(std::move(fx));
    }
    return cat;
}

} // namespace

const std::vector<Fixture>& fixture_catalog() {
    static const std::vector<Fixture> cat = make_catalog();
    return cat;
}

const Fixture& fixture_by_id(const std::string& id) {
    for (const auto& fx : fixture_catalog())
        if (fx.id == id) return fx;
    throw std::invalid_argument("unknown fixture: " + id);
}

std::vector<IdentityRow> cross_check_identities(const Fixture& fx) {
    std::vector<IdentityRow> rows;
    std::vector<Observable> psis = fx.psi_samples;
    if (psis.empty()) psis.push_back(Observable::constant(0.0));

    for (const Observable& psi : psis) {
        const Observable weight = fx.rho * psi.exp();

        double lambda = 0.0;
        std::string lambda_err;
        try {
            const TransferOperator T = perron_frobenius(fx.system, weight);
            lambda = spectral_potential(T, 12).best();
        } catch (const std::exception& e) {
            lambda_err = e.what();
        }

        auto make_row = [&](const std::string& name, bool applicable, double tol,
                            auto&& rhs_fn) {
            IdentityRow r;
            r.fixture = fx.id;
            r.identity = name;
            r.psi_name = psi.name();
            r.tol = tol;
            r.lhs = lambda;
            try {
                r.rhs = rhs_fn();
            } catch (const std::exception& e) {
                r.status = "NOT-APPLICABLE";
                r.note = e.what();
                rows.push_back(std::move(r));
                return;
            }
            r.gap = r.lhs - r.rhs;
            if (!applicable) {
                r.status = "NOT-APPLICABLE";
                r.note = "hypothesis not certified for this fixture";
            } else if (!lambda_err.empty()) {
                r.status = "NOT-APPLICABLE";
                r.note = lambda_err;
            } else {
                r.status = std::fabs(r.gap) <= tol ? "PASS" : "FAIL";
            }
            rows.push_back(std::move(r));
        };

        make_row("spectral_potential_eq_essential_growth",
                 fx.hyp.essential_compatible && lambda_err.empty(), 0.05, [&] {
                     return essential_spectral_potential(*fx.system, weight, 12)
                         .best();
                 });
        make_row("spectral_potential_eq_pressure",
                 fx.hyp.local_homeo_on_essential && fx.hyp.non_contracting &&
                     lambda_err.empty(),
                 0.05, [&] {
                     const NetSchedule sched = fx.system->as_subshift()
                                                   ? NetSchedule::shifts(14)
                                                   : NetSchedule::metric_coarse(10);
                     return topological_pressure(*fx.system, weight, sched).best();
                 });
    }
    return rows;
}

} // namespace tfkit
