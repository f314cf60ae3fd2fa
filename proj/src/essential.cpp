#include "tfkit/essential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tfkit {

std::string EssentialVerdict::str() const {
    std::ostringstream os;
    if (positive)
        os << "POSITIVE(witness " << point_str(*witness) << ", frequency "
           << frequency << ")";
    else
        os << "NEGATIVE-AT-RESOLUTION";
    return os.str();
}

EssentialVerdict is_essential(const SystemModel& S, const Point& x, double radius,
                              int horizon, const std::vector<Point>& probes) {
    if (radius <= 0.0 || horizon < 1)
        throw std::invalid_argument("is_essential: need radius > 0, horizon >= 1");

    const double threshold = 1.0 / (2.0 * horizon);
    EssentialVerdict best;
    for (const Point& y : probes) {
        std::vector<int> prefix(horizon + 1, 0);
        Point z = y;
        for (int i = 0; i < horizon; ++i) {
            prefix[i + 1] = prefix[i] + (S.dist(z, x) <= radius ? 1 : 0);
            z = S.step(z);
        }
        // Checkpoints k over the tail half; each looks at the visit frequency
        // of the trailing window (k/2, k], so transient prefixes drop out.
        int pass = 0, total = 0, last_hits = 0, last_len = 1;
        for (int k = horizon / 2; k <= horizon; ++k) {
            const int lo = k / 2;
            const int hits = prefix[k] - prefix[lo];
            ++total;
            if (static_cast<double>(hits) / (k - lo) > threshold) ++pass;
            last_hits = hits;
            last_len = k - lo;
        }
        if (2 * pass >= total) {
            best.positive = true;
            best.witness = y;
            best.frequency = static_cast<double>(last_hits) / last_len;
            return best;
        }
    }
    return best;
}

std::vector<Point> essential_set(const SystemModel& S, double radius, int horizon,
                                 int resolution) {
    if (S.kind() == SystemModel::Kind::FiniteMap) {
        const auto& fm = static_cast<const FiniteMap&>(S);
        std::vector<Point> out;
        for (int v : fm.periodic_nodes()) out.push_back(Point{v});
        return out;
    }

    const auto candidates = S.sample(resolution);
    std::vector<Point> probes;
    for (std::size_t i = 0; i < candidates.size(); i += 4) probes.push_back(candidates[i]);

    std::vector<Point> out;
    for (const Point& x : candidates) {
        auto local = probes;
        local.push_back(x);
        if (is_essential(S, x, radius, horizon, local).positive) out.push_back(x);
    }

    // Merge the declared fixture answer where one is recorded.
    if (S.kind() == SystemModel::Kind::PiecewiseCover) {
        const auto& pc = static_cast<const PiecewiseCover&>(S);
        if (pc.declared_essential() &&
            pc.declared_essential()->kind() == Subset::Kind::FinitePoints) {
            for (const Point& p : pc.declared_essential()->points()) {
                bool present = false;
                for (const Point& q : out)
                    if (point_close(p, q, 1e-9)) { present = true; break; }
                if (!present) out.push_back(p);
            }
        }
    }
    return out;
}

std::vector<std::vector<Point>> nonwandering_chain(const SystemModel& S,
                                                   int max_levels) {
    if (S.kind() != SystemModel::Kind::FiniteMap)
        throw std::invalid_argument("nonwandering_chain: exact only on finite maps");
    const auto& fm = static_cast<const FiniteMap&>(S);

    // A finite-map point is non-wandering iff it lies on a cycle, and the
    // restriction to the cycle set is a permutation, so the chain stabilizes
    // after one level.
    std::vector<std::vector<Point>> chain;
    std::vector<int> current = fm.periodic_nodes();
    for (int level = 0; level < max_levels; ++level) {
        std::vector<Point> pts;
        for (int v : current) pts.push_back(Point{v});
        if (!chain.empty() && chain.back().size() == pts.size()) break;
        chain.push_back(std::move(pts));
    }
    if (chain.empty()) chain.push_back({});
    return chain;
}

std::vector<std::vector<int>> cantor_nonwandering_words(const CantorShift& S,
                                                        int depth) {
    auto words = S.admissible_words(depth);
    std::vector<std::vector<int>> out;
    for (const auto& w : words) {
        // Returning trajectory w 0^k w 0^inf; spacing k = window bound keeps
        // every window admissible.
        for (int k = 0; k <= (1 << std::max(depth, 1)); ++k) {
            std::vector<int> traj = w;
            traj.insert(traj.end(), k, 0);
            traj.insert(traj.end(), w.begin(), w.end());
            if (CantorShift::window_admissible(traj)) {
                out.push_back(w);
                break;
            }
        }
    }
    return out;
}

} // namespace tfkit
