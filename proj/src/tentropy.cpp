#include "tfkit/tentropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tfkit {

namespace {

nlohmann::json encode(double v) {
    if (v == kNegInf) return "-inf";
    if (std::isnan(v)) return nullptr;
    return v;
}

int cocycle_depth(const Observable& rho) {
    return std::max(1, rho.cylinder_depth());
}

double tail_mass(const InvariantMeasure& mu, const std::vector<int>& w,
                 std::size_t from) {
    if (from >= w.size()) return 1.0;
    return mu.cylinder_mass(std::vector<int>(w.begin() + from, w.end()));
}

// Pi_{i=1..n} rho(sigma^{i-1} cylinder word); needs |w| >= n + k - 1.
double weight_product(const Observable& rho, const std::vector<int>& w, int n) {
    double prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= rho.on_word(w, i);
    return prod;
}

/// (A*^n mu)([w]) on a subshift: sum over admissible extensions z of w to
/// length max(|w|, n+k-1) of the weight product times mu of the shifted tail.
double astar_mass(const Subshift& sh, const InvariantMeasure& mu,
                  const Observable& rho, const std::vector<int>& w, int n) {
    const int k = cocycle_depth(rho);
    const int L = std::max(static_cast<int>(w.size()), n + k - 1);
    if (!sh.admissible(w)) return 0.0;
    double total = 0.0;
    std::vector<int> z = w;
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(z.size()) == L) {
            total += weight_product(rho, z, n) * tail_mass(mu, z, n);
            return;
        }
        for (int s = 0; s < sh.alphabet(); ++s) {
            if (!sh.transitions()[z.back()][s]) continue;
            z.push_back(s);
            self(self);
            z.pop_back();
        }
    };
    rec(rec);
    return total;
}

// Leaves of the n-fold functional expansion of A* delta_y with path weights.
void functional_leaves(const TransferOperator& T, const Point& y, int n, double prod,
                       std::vector<std::pair<Point, double>>& out) {
    if (n == 0) {
        out.emplace_back(y, prod);
        return;
    }
    const FunctionalAtPoint phi = T.functional_at(y);
    if (!phi.interval_supports.empty())
        throw NonDiscretePreimage(phi.interval_supports[0][0],
                                  phi.interval_supports[0][1]);
    for (const auto& [p, w] : phi.atoms)
        functional_leaves(T, p, n - 1, prod * w, out);
}

double atom_mass(const InvariantMeasure& mu) {
    return 1.0 / static_cast<double>(mu.atoms().size());
}

bool word_in_cylinder(const Point& p, const std::vector<int>& z) {
    if (!std::holds_alternative<Word>(p)) return false;
    const Word& w = std::get<Word>(p);
    for (std::size_t i = 0; i < z.size(); ++i)
        if (w.at(i) != z[i]) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Parry chain: eigen-data of the weighted node matrix, used by the
// variational-principle and duality routines.

struct NodeChain {
    std::vector<std::vector<int>> nodes; // words of length max(1, k-1)
    int node_len = 1;
    std::vector<std::vector<double>> M; // raw weights, 0 off the edges
    double log_lambda = kNegInf;
    std::vector<double> v, pi;
    std::vector<std::vector<double>> P; // optimizing Markov transitions
};

NodeChain parry_chain(const Subshift& sh, const Observable& weight) {
    NodeChain c;
    const int k = std::max(1, weight.cylinder_depth());
    c.node_len = std::max(1, k - 1);
    c.nodes = sh.admissible_words(c.node_len);
    const int N = static_cast<int>(c.nodes.size());
    c.M.assign(N, std::vector<double>(N, 0.0));

    auto edge_word = [&](int i, int j, std::vector<int>& out) -> bool {
        const auto& u = c.nodes[i];
        const auto& w = c.nodes[j];
        for (int t = 0; t + 1 < c.node_len; ++t)
            if (u[t + 1] != w[t]) return false;
        if (!sh.transitions()[u.back()][w.back()]) return false;
        out = u;
        out.push_back(w.back());
        return true;
    };

    double max_entry = 0.0;
    std::vector<int> word;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            if (edge_word(i, j, word)) {
                c.M[i][j] = weight.on_word(word);
                max_entry = std::max(max_entry, c.M[i][j]);
            }
    if (max_entry <= 0.0) return c; // zero operator, log_lambda = -inf

    // Damped power iteration on M + cI keeps the dominant pair while breaking
    // periodicity; the shift c is subtracted at the end.
    const double damp = max_entry;
    auto iterate = [&](bool transpose) {
        std::vector<double> x(N, 1.0), y(N, 0.0);
        double lam = 0.0;
        for (int it = 0; it < 5000; ++it) {
            for (int i = 0; i < N; ++i) {
                double s = damp * x[i];
                for (int j = 0; j < N; ++j)
                    s += transpose ? c.M[j][i] * x[j] : c.M[i][j] * x[j];
                y[i] = s;
            }
            double mx = *std::max_element(y.begin(), y.end());
            for (double& t : y) t /= mx;
            double resid = 0.0;
            for (int i = 0; i < N; ++i) resid = std::max(resid, std::fabs(y[i] - x[i]));
            x.swap(y);
            lam = mx;
            if (resid < 1e-15 && it > 10) break;
        }
        return std::make_pair(x, lam - damp);
    };
    auto [v, lam_r] = iterate(false);
    auto [u, lam_l] = iterate(true);
    (void)lam_l;
    if (lam_r <= 0.0) return c;
    c.v = v;
    c.log_lambda = std::log(lam_r);

    c.P.assign(N, std::vector<double>(N, 0.0));
    for (int i = 0; i < N; ++i) {
        if (v[i] <= 0.0) continue;
        for (int j = 0; j < N; ++j)
            c.P[i][j] = c.M[i][j] * v[j] / (lam_r * v[i]);
    }
    double z = 0.0;
    c.pi.assign(N, 0.0);
    for (int i = 0; i < N; ++i) {
        c.pi[i] = u[i] * v[i];
        z += c.pi[i];
    }
    for (double& t : c.pi) t /= z;
    return c;
}

/// Cylinder mass of [z] under the chain's stationary Markov measure.
double gibbs_mass(const NodeChain& c, const std::vector<int>& z) {
    const int j = c.node_len;
    auto node_index = [&](const std::vector<int>& w, int from) -> int {
        for (std::size_t i = 0; i < c.nodes.size(); ++i) {
            bool ok = true;
            for (int t = 0; t < j; ++t)
                if (c.nodes[i][t] != w[from + t]) { ok = false; break; }
            if (ok) return static_cast<int>(i);
        }
        return -1;
    };
    if (static_cast<int>(z.size()) <= j) {
        double m = 0.0;
        for (std::size_t i = 0; i < c.nodes.size(); ++i) {
            bool pre = true;
            for (std::size_t t = 0; t < z.size(); ++t)
                if (c.nodes[i][t] != z[t]) { pre = false; break; }
            if (pre) m += c.pi[i];
        }
        return m;
    }
    int cur = node_index(z, 0);
    if (cur < 0) return 0.0;
    double m = c.pi[cur];
    for (int t = j; t < static_cast<int>(z.size()); ++t) {
        const int nxt = node_index(z, t - j + 1);
        if (nxt < 0) return 0.0;
        m *= c.P[cur][nxt];
        cur = nxt;
    }
    return m;
}

double measure_cylinder_mass(const InvariantMeasure& mu, const std::vector<int>& z) {
    if (mu.variant() == InvariantMeasure::Variant::Markov)
        return mu.cylinder_mass(z);
    double m = 0.0;
    for (const Point& p : mu.atoms())
        if (word_in_cylinder(p, z)) m += atom_mass(mu);
    return m;
}

double lambda_of(const TransferOperator& T, const Observable& psi) {
    const Observable weight = T.cocycle() * psi.exp();
    if (const Subshift* sh = T.host()->as_subshift())
        return sft_spectral_oracle(*sh, weight);
    return spectral_potential(with_weight(T, psi.exp()), 12).best();
}

} // namespace

// ---------------------------------------------------------------------------

double TEntropyEstimate::headline() const {
    double h = std::numeric_limits<double>::quiet_NaN();
    for (const auto& row : cells)
        for (double v : row)
            if (std::isnan(h) || v < h) h = v;
    return h;
}

nlohmann::json TEntropyEstimate::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : cells) {
        nlohmann::json r = nlohmann::json::array();
        for (double v : row) r.push_back(encode(v));
        rows.push_back(r);
    }
    return {{"method", method}, {"ns", ns},       {"depths", depths},
            {"cells", rows},    {"headline", encode(headline())}};
}

TEntropyEstimate t_entropy_partition(const TransferOperator& T,
                                     const InvariantMeasure& mu, int depth_max,
                                     int n_max) {
    TEntropyEstimate out;
    out.method = "partition";
    const Observable& rho = T.cocycle();

    if (mu.variant() == InvariantMeasure::Variant::Markov) {
        const Subshift* sh = T.host()->as_subshift();
        if (!sh || !rho.is_cylinder())
            throw std::invalid_argument(
                "t_entropy_partition: Markov measures need a symbolic host with "
                "cylinder cocycle");
        for (int d = 1; d <= depth_max; ++d) out.depths.push_back(d);
        for (int n = 1; n <= n_max; ++n) {
            out.ns.push_back(n);
            std::vector<double> row;
            for (int d = 1; d <= depth_max; ++d) {
                double cell = 0.0;
                for (const auto& w : sh->admissible_words(d)) {
                    const double mw = mu.cylinder_mass(w);
                    if (mw <= 0.0) continue; // zero-mass summands drop out
                    const double aw = astar_mass(*sh, mu, rho, w, n);
                    if (aw <= 0.0) { cell = kNegInf; break; }
                    cell += mw * std::log(aw / mw);
                }
                row.push_back(cell == kNegInf ? kNegInf : cell / n);
            }
            out.cells.push_back(std::move(row));
        }
        return out;
    }

    // Atomic measures: indicator cells are shrinking balls at the atoms; the
    // complement cell has mu-mass zero and drops out.
    const SystemModel& S = *T.host();
    const double mass = atom_mass(mu);
    for (int d = 1; d <= depth_max; ++d) out.depths.push_back(d);
    for (int n = 1; n <= n_max; ++n) {
        out.ns.push_back(n);
        std::vector<double> row;
        for (int d = 1; d <= depth_max; ++d) {
            const double r = S.diameter() * std::ldexp(1.0, -d);
            double cell = 0.0;
            for (std::size_t i = 0; i < mu.atoms().size(); ++i) {
                const Point& x = mu.atoms()[i];
                bool duplicate = false;
                for (std::size_t j = 0; j < i; ++j)
                    if (S.dist(x, mu.atoms()[j]) <= r) { duplicate = true; break; }
                if (duplicate) continue;
                double mg = 0.0;
                for (const Point& y : mu.atoms())
                    if (S.dist(x, y) <= r) mg += mass;
                double pushed = 0.0;
                for (const Point& y : mu.atoms()) {
                    std::vector<std::pair<Point, double>> leaves;
                    functional_leaves(T, y, n, 1.0, leaves);
                    for (const auto& [p, w] : leaves)
                        if (S.dist(p, x) <= r) pushed += mass * w;
                }
                if (pushed <= 0.0) { cell = kNegInf; break; }
                cell += mg * std::log(pushed / mg);
            }
            row.push_back(cell == kNegInf ? kNegInf : cell / n);
        }
        out.cells.push_back(std::move(row));
    }
    return out;
}

TEntropyEstimate t_entropy_radon(const TransferOperator& T,
                                 const InvariantMeasure& mu, int n_max) {
    TEntropyEstimate out;
    out.method = "radon";
    const Observable& rho = T.cocycle();

    if (mu.variant() == InvariantMeasure::Variant::Markov) {
        const Subshift* sh = T.host()->as_subshift();
        if (!sh || !rho.is_cylinder())
            throw std::invalid_argument(
                "t_entropy_radon: Markov measures need a symbolic host with "
                "cylinder cocycle");
        const int k = cocycle_depth(rho);
        for (int n = 1; n <= n_max; ++n) {
            // Find the depth at which the density is stable under refinement
            // on all but 1e-9 of the mu-mass.
            auto density = [&](const std::vector<int>& w) {
                return astar_mass(*sh, mu, rho, w, n) / mu.cylinder_mass(w);
            };
            int stable_m = -1;
            for (int m = std::max(1, n + k - 1); m <= n + k + 4; ++m) {
                double unstable = 0.0;
                for (const auto& w : sh->admissible_words(m)) {
                    const double mw = mu.cylinder_mass(w);
                    if (mw <= 0.0) continue;
                    const double base = density(w);
                    for (int s = 0; s < sh->alphabet(); ++s) {
                        if (!sh->transitions()[w.back()][s]) continue;
                        std::vector<int> ws = w;
                        ws.push_back(s);
                        const double msub = mu.cylinder_mass(ws);
                        if (msub <= 0.0) continue;
                        const double ref = density(ws);
                        const double scale = std::max({std::fabs(base), std::fabs(ref), 1.0});
                        if (std::fabs(ref - base) > 1e-9 * scale) {
                            unstable += msub;
                            break;
                        }
                    }
                }
                if (unstable <= 1e-9) { stable_m = m; break; }
            }
            if (stable_m < 0)
                throw std::runtime_error(
                    "t_entropy_radon: density decomposition did not stabilize "
                    "within the depth budget");
            double val = 0.0;
            for (const auto& w : sh->admissible_words(stable_m)) {
                const double mw = mu.cylinder_mass(w);
                if (mw <= 0.0) continue;
                const double aw = astar_mass(*sh, mu, rho, w, n);
                if (aw <= 0.0) { val = kNegInf; break; }
                val += mw * std::log(aw / mw);
            }
            out.ns.push_back(n);
            out.depths.push_back(stable_m);
            out.cells.push_back({val == kNegInf ? kNegInf : val / n});
        }
        return out;
    }

    // Atomic measures: the density at an atom is the pushed-forward mass it
    // receives divided by its own mass; everything else is singular part.
    const double mass = atom_mass(mu);
    for (int n = 1; n <= n_max; ++n) {
        std::vector<double> astar(mu.atoms().size(), 0.0);
        for (const Point& y : mu.atoms()) {
            std::vector<std::pair<Point, double>> leaves;
            functional_leaves(T, y, n, 1.0, leaves);
            for (const auto& [p, w] : leaves)
                for (std::size_t i = 0; i < mu.atoms().size(); ++i)
                    if (point_close(p, mu.atoms()[i], 1e-9)) astar[i] += mass * w;
        }
        double val = 0.0;
        for (std::size_t i = 0; i < mu.atoms().size(); ++i) {
            if (astar[i] <= 0.0) { val = kNegInf; break; }
            val += mass * std::log(astar[i] / mass);
        }
        out.ns.push_back(n);
        out.depths.push_back(0);
        out.cells.push_back({val == kNegInf ? kNegInf : val / n});
    }
    return out;
}

double integrate_log_cocycle(const InvariantMeasure& mu, const Observable& rho) {
    if (mu.variant() == InvariantMeasure::Variant::Markov) {
        const Subshift* sh = mu.host()->as_subshift();
        if (!sh || !rho.is_cylinder())
            throw std::invalid_argument(
                "integrate_log_cocycle: Markov measures need a cylinder cocycle");
        double total = 0.0;
        for (const auto& w : sh->admissible_words(cocycle_depth(rho))) {
            const double mw = mu.cylinder_mass(w);
            if (mw <= 0.0) continue;
            const double v = rho.on_word(w);
            if (v <= 0.0) return kNegInf;
            total += mw * std::log(v);
        }
        return total;
    }
    double total = 0.0;
    const double mass = atom_mass(mu);
    for (const Point& p : mu.atoms()) {
        const double v = rho(p);
        if (v <= 0.0) return kNegInf;
        total += mass * std::log(v);
    }
    return total;
}

double t_entropy_closed_form(const TransferOperator& T, const InvariantMeasure& mu,
                             const TauHypotheses& hyp) {
    if (hyp.invertible_on_essential)
        return integrate_log_cocycle(mu, T.cocycle());
    if (hyp.open_non_contracting)
        return integrate_log_cocycle(mu, T.cocycle()) + ks_entropy(mu);
    throw std::invalid_argument(
        "t_entropy_closed_form: neither an invertible essential restriction "
        "nor an open non-contracting local homeomorphism is certified for " +
        T.host()->name());
}

std::vector<VariationalRow> verify_variational_principle(
    const TransferOperator& T, const std::vector<Observable>& psis,
    const std::vector<InvariantMeasure>& measures, double tol) {
    std::vector<VariationalRow> rows;
    const Subshift* sh = T.host()->as_subshift();
    for (const Observable& psi : psis) {
        VariationalRow row;
        row.psi_name = psi.name();
        row.lambda = lambda_of(T, psi);

        row.family_max = kNegInf;
        for (const InvariantMeasure& mu : measures) {
            const double tau = t_entropy_radon(T, mu, 3).headline();
            const double val = integrate(mu, psi) + tau;
            row.family_max = std::max(row.family_max, val);
        }

        if (sh) {
            const Observable weight = T.cocycle() * psi.exp();
            const NodeChain chain = parry_chain(*sh, weight);
            if (chain.log_lambda != kNegInf) {
                // mu*[ln weight] + h(mu*) for the eigenvector chain; equals
                // lambda when the principle holds.
                double val = 0.0;
                for (std::size_t i = 0; i < chain.pi.size(); ++i)
                    for (std::size_t j = 0; j < chain.pi.size(); ++j) {
                        const double m = chain.pi[i] * chain.P[i][j];
                        if (m <= 0.0) continue;
                        val += m * (std::log(chain.M[i][j]) - std::log(chain.P[i][j]));
                    }
                row.optimizer_value = val;
            }
        }

        const double attained = std::max(row.family_max, row.optimizer_value);
        row.gap = row.lambda - attained;
        row.pass = row.family_max <= row.lambda + tol && attained >= row.lambda - tol;
        rows.push_back(std::move(row));
    }
    return rows;
}

double dual_value(const TransferOperator& T, const InvariantMeasure& mu,
                  const Observable& psi) {
    return integrate(mu, psi) - lambda_of(T, psi);
}

DualResult legendre_dual(const TransferOperator& T, const InvariantMeasure& mu,
                         int depth, int iterations) {
    const Subshift* sh = T.host()->as_subshift();
    if (!sh)
        throw std::invalid_argument("legendre_dual: needs a symbolic host");
    if (depth < 1 || depth > 3)
        throw std::invalid_argument("legendre_dual: potential depth must be 1..3");

    const int A = sh->alphabet();
    int table_size = 1;
    for (int i = 0; i < depth; ++i) table_size *= A;
    std::vector<double> table(table_size, 0.0);
    const auto words = sh->admissible_words(depth);
    auto word_index = [&](const std::vector<int>& w) {
        int idx = 0;
        for (int s : w) idx = idx * A + s;
        return idx;
    };

    DualResult best;
    best.tau = t_entropy_radon(T, mu, 3).headline();
    const double lr = 1.0;
    for (int it = 0; it < iterations; ++it) {
        Observable psi = Observable::cylinder(A, depth, table, "dual_psi");
        const Observable weight = T.cocycle() * psi.exp();
        const NodeChain chain = parry_chain(*sh, weight);
        const double value = integrate(mu, psi) - chain.log_lambda;
        if (value > best.value) {
            best.value = value;
            best.best_psi = psi;
        }
        best.iterations = it + 1;
        // Ascent along the exact gradient: the measure's cylinder masses
        // minus the optimizing chain's.
        for (const auto& w : words) {
            const double target = measure_cylinder_mass(mu, w);
            const double g = gibbs_mass(chain, w);
            table[word_index(w)] += lr * (target - g);
        }
    }
    best.gap = best.value + best.tau;
    return best;
}

} // namespace tfkit
