#include "tfkit/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tfkit/cyclemean.hpp"

namespace tfkit {

namespace {

// Closed communicating classes of the support graph of P (states from which
// the chain cannot escape the class). Stationary vector is unique iff one.
std::vector<std::vector<int>> closed_classes(const std::vector<std::vector<double>>& P) {
    const int n = static_cast<int>(P.size());
    // reach[i][j]: j reachable from i in >= 0 steps.
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
        reach[i][i] = true;
        for (int j = 0; j < n; ++j)
            if (P[i][j] > 0.0) reach[i][j] = true;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (reach[i][k])
                for (int j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = true;

    std::vector<std::vector<int>> classes;
    std::vector<bool> used(n, false);
    for (int i = 0; i < n; ++i) {
        if (used[i]) continue;
        std::vector<int> cls;
        bool closed = true;
        for (int j = 0; j < n; ++j) {
            if (reach[i][j] && reach[j][i]) cls.push_back(j);
            else if (reach[i][j]) closed = false;
        }
        for (int j : cls) used[j] = true;
        if (closed) classes.push_back(std::move(cls));
    }
    return classes;
}

} // namespace

double InvariantMeasure::cylinder_mass(const std::vector<int>& w) const {
    if (variant_ != Variant::Markov)
        throw std::logic_error("cylinder_mass: not a Markov measure");
    if (w.empty()) return 1.0;
    double m = pi_[w[0]];
    for (std::size_t i = 1; i < w.size(); ++i) {
        m *= P_[w[i - 1]][w[i]];
        if (m == 0.0) return 0.0;
    }
    return m;
}

std::string InvariantMeasure::describe() const {
    std::ostringstream os;
    switch (variant_) {
    case Variant::Markov: {
        os << "markov(pi=";
        for (std::size_t i = 0; i < pi_.size(); ++i)
            os << (i ? "," : "") << pi_[i];
        os << ")";
        break;
    }
    case Variant::PeriodicOrbit:
        os << "cycle[" << atoms_.size() << "](" << point_str(atoms_.front()) << ",...)";
        break;
    case Variant::Dirac:
        os << "dirac(" << point_str(atoms_.front()) << ")";
        break;
    }
    return os.str();
}

nlohmann::json InvariantMeasure::to_json() const {
    nlohmann::json j;
    switch (variant_) {
    case Variant::Markov:
        j["variant"] = "markov";
        j["stationary"] = pi_;
        j["transitions"] = P_;
        break;
    case Variant::PeriodicOrbit:
        j["variant"] = "periodic_orbit";
        break;
    case Variant::Dirac:
        j["variant"] = "dirac";
        break;
    }
    if (!atoms_.empty()) {
        j["support"] = nlohmann::json::array();
        for (const auto& p : atoms_) j["support"].push_back(point_str(p));
    }
    j["entropy"] = ks_entropy(*this);
    return j;
}

InvariantMeasure markov_measure(SystemPtr S, std::vector<std::vector<double>> P) {
    const Subshift* shift = S->as_subshift();
    if (!shift) throw std::invalid_argument("markov_measure: host is not a subshift");
    const int n = shift->alphabet();
    if (static_cast<int>(P.size()) != n)
        throw std::invalid_argument("markov_measure: matrix size mismatch");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(P[i].size()) != n)
            throw std::invalid_argument("markov_measure: matrix size mismatch");
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            if (P[i][j] < 0.0)
                throw std::invalid_argument("markov_measure: negative entry");
            if (P[i][j] > 0.0 && shift->transitions()[i][j] == 0)
                throw std::invalid_argument(
                    "markov_measure: mass on inadmissible transition " +
                    std::to_string(i) + "->" + std::to_string(j));
            row += P[i][j];
        }
        if (std::fabs(row - 1.0) > 1e-12)
            throw std::invalid_argument("markov_measure: row " + std::to_string(i) +
                                        " not stochastic (sum " + std::to_string(row) + ")");
    }

    const auto classes = closed_classes(P);
    if (classes.size() != 1) {
        std::ostringstream os;
        os << "markov_measure: reducible chain, closed classes";
        for (const auto& c : classes) {
            os << " {";
            for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
            os << "}";
        }
        throw std::invalid_argument(os.str());
    }

    // Damped power iteration: (P+I)/2 kills periodicity, same fixed vector.
    std::vector<double> pi(n, 1.0 / n), next(n);
    for (int iter = 0; iter < 200000; ++iter) {
        for (int j = 0; j < n; ++j) {
            double s = 0.5 * pi[j];
            for (int i = 0; i < n; ++i) s += 0.5 * pi[i] * P[i][j];
            next[j] = s;
        }
        double norm = 0.0, resid = 0.0;
        for (int j = 0; j < n; ++j) norm += next[j];
        for (int j = 0; j < n; ++j) {
            next[j] /= norm;
            resid = std::max(resid, std::fabs(next[j] - pi[j]));
        }
        pi.swap(next);
        if (resid < 1e-15) break;
    }

    InvariantMeasure mu;
    mu.variant_ = InvariantMeasure::Variant::Markov;
    mu.host_ = std::move(S);
    mu.pi_ = std::move(pi);
    mu.P_ = std::move(P);
    return mu;
}

InvariantMeasure periodic_orbit_measure(SystemPtr S, std::vector<Point> cycle) {
    if (cycle.empty()) throw std::invalid_argument("periodic_orbit_measure: empty cycle");
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const Point next = S->step(cycle[i]);
        if (!point_close(next, cycle[(i + 1) % cycle.size()], 1e-9))
            throw std::invalid_argument("periodic_orbit_measure: list is not a cycle at " +
                                        point_str(cycle[i]));
    }
    InvariantMeasure mu;
    mu.variant_ = InvariantMeasure::Variant::PeriodicOrbit;
    mu.host_ = std::move(S);
    mu.atoms_ = std::move(cycle);
    return mu;
}

InvariantMeasure dirac_measure(SystemPtr S, Point p) {
    if (!point_close(S->step(p), p, 1e-9))
        throw std::invalid_argument("dirac_measure: " + point_str(p) + " is not fixed");
    InvariantMeasure mu;
    mu.variant_ = InvariantMeasure::Variant::Dirac;
    mu.host_ = std::move(S);
    mu.atoms_ = {std::move(p)};
    return mu;
}

double ks_entropy(const InvariantMeasure& mu) {
    if (mu.variant() != InvariantMeasure::Variant::Markov) return 0.0;
    const auto& pi = mu.stationary();
    const auto& P = mu.transitions();
    double h = 0.0;
    for (std::size_t i = 0; i < pi.size(); ++i)
        for (std::size_t j = 0; j < pi.size(); ++j)
            if (P[i][j] > 0.0) h -= pi[i] * P[i][j] * std::log(P[i][j]);
    return h;
}

double integrate(const InvariantMeasure& mu, const Observable& f) {
    if (mu.variant() == InvariantMeasure::Variant::Markov) {
        if (!f.is_cylinder())
            throw std::invalid_argument(
                "integrate: Markov measures need cylinder observables");
        const int depth = f.cylinder_depth();
        if (depth > kMaxCylinderDepth)
            throw std::invalid_argument("integrate: cylinder depth " +
                                        std::to_string(depth) + " exceeds cap " +
                                        std::to_string(kMaxCylinderDepth));
        if (depth == 0) return f.on_word({});
        const Subshift* shift = mu.host()->as_subshift();
        double total = 0.0;
        for (const auto& w : shift->admissible_words(depth))
            total += mu.cylinder_mass(w) * f.on_word(w);
        return total;
    }
    double total = 0.0;
    for (const auto& p : mu.atoms()) total += f(p);
    return total / mu.atoms().size();
}

double integrate(const EmpiricalMeasure& mu, const Observable& f) {
    double total = 0.0;
    Point x = mu.base;
    for (int i = 0; i < mu.horizon; ++i) {
        total += f(x);
        x = mu.host->step(x);
    }
    return total / mu.horizon;
}

ErgodicMaxResult max_ergodic_average(SystemPtr S, const Observable& w) {
    if (S->kind() == SystemModel::Kind::FiniteMap) {
        const auto& fm = static_cast<const FiniteMap&>(*S);
        std::vector<Edge> edges;
        for (int v = 0; v < fm.nodes(); ++v)
            edges.push_back({v, fm.image_of(v), w(Point{v})});
        const auto r = max_cycle_mean(fm.nodes(), edges);
        std::vector<Point> cycle;
        for (int v : r.cycle) cycle.push_back(Point{v});
        auto measure = periodic_orbit_measure(S, cycle);
        return {r.mean, std::move(cycle), std::move(measure)};
    }

    const Subshift* shift = S->as_subshift();
    if (!shift)
        throw std::invalid_argument("max_ergodic_average: need subshift or finite map");
    if (!w.is_cylinder())
        throw std::invalid_argument("max_ergodic_average: weight must be cylinder");
    const int k = std::max(1, w.cylinder_depth());

    // Nodes are admissible (k-1)-words (symbols when k = 1); an edge extends
    // the word by one symbol and carries the weight of the depth-k window.
    const int node_len = std::max(1, k - 1);
    auto nodes = shift->admissible_words(node_len);
    if (nodes.empty()) throw std::invalid_argument("max_ergodic_average: empty shift");
    auto index_of = [&](const std::vector<int>& u) {
        return static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(), u) -
                                nodes.begin());
    };
    std::vector<Edge> edges;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
        for (int s = 0; s < shift->alphabet(); ++s) {
            std::vector<int> ext = nodes[i];
            ext.push_back(s);
            if (!shift->admissible(ext)) continue;
            std::vector<int> v(ext.end() - node_len, ext.end());
            const double weight = k == 1 ? w.on_word(nodes[i]) : w.on_word(ext);
            edges.push_back({i, index_of(v), weight});
        }
    }
    const auto r = max_cycle_mean(static_cast<int>(nodes.size()), edges);

    // The node cycle spells a periodic symbol sequence: first symbols in order.
    std::vector<int> symbols;
    for (int id : r.cycle) symbols.push_back(nodes[id][0]);
    Word base({}, symbols);
    std::vector<Point> cycle;
    Word cur = base;
    for (std::size_t i = 0; i < base.cycle.size(); ++i) {
        cycle.push_back(Point{cur});
        cur = cur.shifted();
    }
    auto measure = periodic_orbit_measure(S, cycle);
    return {r.mean, std::move(cycle), std::move(measure)};
}

} // namespace tfkit
