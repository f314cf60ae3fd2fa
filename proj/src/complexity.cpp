#include "tfkit/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tfkit/transfer.hpp"

namespace tfkit {

namespace {

int depth_for(double eps) {
    int k = 1;
    while (std::ldexp(1.0, -k) > eps + 1e-15 && k < 16) ++k;
    return k;
}

std::vector<Point> subset_sample(const SystemModel& S, const Subset& Y, int n,
                                 double eps, int resolution) {
    if (const Subshift* sh = S.as_subshift()) {
        const int len = std::min(n + depth_for(eps) - 1, 18);
        if (Y.kind() == Subset::Kind::SubSFT) {
            Subshift sub(sh->alphabet(), Y.transitions());
            return sub.cylinder_reps(std::max(1, len));
        }
        return sh->cylinder_reps(std::max(1, len));
    }
    std::vector<Point> out;
    for (const auto& chain : Y.chains(S, resolution))
        for (const auto& p : chain) out.push_back(p);
    return out;
}

// Greedy eps-net of a point list under plain d (depth 1).
std::vector<Point> greedy_net(const SystemModel& S, const std::vector<Point>& sample,
                              double eps) {
    std::vector<Point> net;
    for (const auto& p : sample) {
        bool covered = false;
        for (const auto& c : net)
            if (S.dist(p, c) <= eps) { covered = true; break; }
        if (!covered) net.push_back(p);
    }
    return net;
}

// Per-depth preimage counts and weighted tree sums within the essential
// restriction, pooled over roots by sup.
struct TreeSums {
    std::vector<double> max_count; // index d: sup_x |preimage tree level d|
    std::vector<double> max_sum;   // sup_x Phi_d with the given weight
};

TreeSums preimage_tree_stats(const SystemModel& S, const std::vector<Point>& roots,
                             int n_max, const Observable* weight) {
    TreeSums out;
    out.max_count.assign(n_max + 1, 0.0);
    out.max_sum.assign(n_max + 1, 0.0);
    struct Frame {
        Point p;
        double prod;
        int depth;
    };
    for (const Point& root : roots) {
        std::vector<double> count(n_max + 1, 0.0), sum(n_max + 1, 0.0);
        std::vector<Frame> stack{{root, 1.0, 0}};
        while (!stack.empty()) {
            Frame fr = std::move(stack.back());
            stack.pop_back();
            if (fr.depth == n_max) continue;
            const PreimageSet pre = S.preimage(fr.p, true);
            if (!pre.discrete())
                throw NonDiscretePreimage(pre.intervals[0][0], pre.intervals[0][1]);
            for (const Point& y : pre.points) {
                const double w = weight ? (*weight)(y) : 1.0;
                const double prod = fr.prod * w;
                count[fr.depth + 1] += 1.0;
                sum[fr.depth + 1] += prod;
                // Dead weight still ramifies for counting, but the weighted
                // branch is pruned.
                stack.push_back({y, prod, fr.depth + 1});
            }
        }
        for (int d = 1; d <= n_max; ++d) {
            out.max_count[d] = std::max(out.max_count[d], count[d]);
            out.max_sum[d] = std::max(out.max_sum[d], sum[d]);
        }
    }
    return out;
}

int tree_depth_cap(const SystemModel& S, int n_max) {
    return S.sheet_bound() >= 3 ? std::min(n_max, 9) : std::min(n_max, 14);
}

bool orbit_engine_host(const SystemModel& S) {
    switch (S.kind()) {
    case SystemModel::Kind::CircleRotation:
    case SystemModel::Kind::SquareFixture:
    case SystemModel::Kind::LadderFixture:
    case SystemModel::Kind::FiniteMap:
        return true;
    default:
        return false;
    }
}

std::vector<Point> essential_eps_net(const SystemModel& S, double eps) {
    const int res = std::min(2048, std::max(8, static_cast<int>(std::ceil(2.0 / eps))));
    return greedy_net(S, S.essential_sample(res), eps);
}

} // namespace

std::vector<Point> spanning_set(const SystemModel& S, const Subset& Y, int n,
                                double eps, int resolution) {
    const auto sample = subset_sample(S, Y, n, eps, resolution);
    std::vector<Point> net;
    for (const auto& p : sample) {
        bool covered = false;
        for (const auto& c : net)
            if (dn_distance(S, p, c, n) <= eps) { covered = true; break; }
        if (!covered) net.push_back(p);
    }
    return net;
}

std::vector<Point> separated_set(const SystemModel& S, const Subset& Y, int n,
                                 double eps, int resolution) {
    const auto sample = subset_sample(S, Y, n, eps, resolution);
    std::vector<Point> kept;
    for (const auto& p : sample) {
        bool clear = true;
        for (const auto& c : kept)
            if (dn_distance(S, p, c, n) <= eps) { clear = false; break; }
        if (clear) kept.push_back(p);
    }
    return kept;
}

LadderEstimate topological_pressure(const SystemModel& S, const Observable& a,
                                    const NetSchedule& sched) {
    if (a.min_value_hint() <= 0.0 && a.obs_kind() != Observable::Kind::Constant)
        throw std::invalid_argument("topological_pressure: weight must be positive");
    std::vector<double> ladder = sched.eps_ladder;
    if (ladder.empty()) ladder = {std::ldexp(1.0, -8)};
    if (sched.n_max < 1) throw std::invalid_argument("topological_pressure: bad schedule");

    LadderEstimate out;
    if (const Subshift* sh = S.as_subshift()) {
        if (!a.is_cylinder())
            throw std::invalid_argument("topological_pressure: shift weight must be cylinder");
        const int m = std::max(1, a.cylinder_depth() - 1);
        for (double eps : ladder) {
            const int extend = std::max(0, depth_for(eps) - 1 - m);
            const auto it = shift_transfer_iteration(*sh, a, sched.n_max, extend);
            EstimateTrace t("pressure", eps, true);
            t.note("method", "exact cylinder sums");
            for (int n = 1; n <= sched.n_max; ++n) t.add(n, it.log_sum[n - 1]);
            out.add(std::move(t));
        }
        return out;
    }

    if (orbit_engine_host(S)) {
        // The essential restriction of these hosts is isometric-like: the
        // standing eps-net stays (n,eps)-spanning, Birkhoff sums run forward.
        for (double eps : ladder) {
            auto net = essential_eps_net(S, eps);
            std::vector<Point> pos = net;
            std::vector<double> sums(net.size(), 0.0);
            EstimateTrace t("pressure", eps, true);
            t.note("method", "orbit sums over eps-net, size " +
                                 std::to_string(net.size()));
            for (int n = 1; n <= sched.n_max; ++n) {
                double mx = kNegInf;
                for (std::size_t i = 0; i < pos.size(); ++i) {
                    const double v = a(pos[i]);
                    sums[i] += v > 0.0 ? std::log(v) : kNegInf;
                    mx = std::max(mx, sums[i]);
                    pos[i] = S.step(pos[i]);
                }
                if (mx == kNegInf) {
                    t.add(n, kNegInf);
                    continue;
                }
                double total = 0.0;
                for (double s : sums) total += std::exp(s - mx);
                t.add(n, mx + std::log(total));
            }
            out.add(std::move(t));
        }
        return out;
    }

    // Expanding hosts: pulled-back nets, weighted preimage-tree sums.
    for (double eps : ladder) {
        auto roots = essential_eps_net(S, eps);
        if (roots.size() > 600) roots.resize(600);
        const int cap = tree_depth_cap(S, sched.n_max);
        const auto stats = preimage_tree_stats(S, roots, cap, &a);
        EstimateTrace t("pressure", eps, true);
        t.note("method", "pulled-back net tree sums, roots " +
                             std::to_string(roots.size()));
        for (int n = 1; n <= cap; ++n)
            t.add(n, stats.max_sum[n] > 0.0 ? std::log(stats.max_sum[n]) : kNegInf);
        out.add(std::move(t));
    }
    return out;
}

LadderEstimate topological_entropy(const SystemModel& S, const NetSchedule& sched) {
    return topological_pressure(S, Observable::constant(1.0), sched);
}

EstimateTrace inverse_rami_rate(const SystemModel& S, int n_max) {
    if (const Subshift* sh = S.as_subshift()) {
        // c_n(s) = number of admissible length-n prepend words in front of s.
        const int A = sh->alphabet();
        std::vector<double> c(A, 1.0);
        EstimateTrace t("omega", 0.0, true);
        t.note("method", "exact prepend counts");
        double offset = 0.0;
        for (int n = 1; n <= n_max; ++n) {
            std::vector<double> next(A, 0.0);
            for (int s = 0; s < A; ++s)
                for (int u = 0; u < A; ++u)
                    if (sh->transitions()[u][s]) next[s] += c[u];
            const double m = *std::max_element(next.begin(), next.end());
            for (double& x : next) x /= m;
            offset += std::log(m);
            c = std::move(next);
            t.add(n, offset);
        }
        return t;
    }
    const int cap = tree_depth_cap(S, n_max);
    const auto roots = S.essential_sample(128);
    const auto stats = preimage_tree_stats(S, roots, cap, nullptr);
    EstimateTrace t("omega", 0.0, true);
    t.note("method", "preimage counts within the essential set");
    for (int n = 1; n <= cap; ++n)
        t.add(n, stats.max_count[n] > 0.0 ? std::log(stats.max_count[n]) : kNegInf);
    return t;
}

LadderEstimate forward_entropy(const SystemModel& S, const NetSchedule& sched) {
    std::vector<double> ladder = sched.eps_ladder;
    if (ladder.empty()) ladder = {std::ldexp(1.0, -8)};
    LadderEstimate out;

    if (const Subshift* sh = S.as_subshift()) {
        // The cylinder net of depth n+k-1 maps forward onto the depth-(k-1)
        // cylinders: the image count does not grow with n.
        for (double eps : ladder) {
            const int k = depth_for(eps);
            const double images = static_cast<double>(
                sh->admissible_words(std::max(1, k - 1)).size());
            EstimateTrace t("gamma", eps, true);
            t.note("method", "cylinder net forward images");
            for (int n = 1; n <= sched.n_max; ++n) t.add(n, std::log(images));
            out.add(std::move(t));
        }
        return out;
    }

    const bool pulled_back = non_contracting_radius(S).has_value();
    for (double eps : ladder) {
        EstimateTrace t("gamma", eps, true);
        if (pulled_back) {
            // alpha^n(alpha^{-n} F) = F: the image count is |F(eps)| flat.
            const double images = static_cast<double>(essential_eps_net(S, eps).size());
            t.note("method", "pulled-back net, flat image count");
            for (int n = 1; n <= sched.n_max; ++n) t.add(n, std::log(images));
        } else {
            t.note("method", "greedy net forward images (upper estimate)");
            const int res = std::min(512, std::max(32, static_cast<int>(4.0 / eps)));
            const int cap = std::min(sched.n_max, 8);
            for (int n = 1; n <= cap; ++n) {
                const auto net = spanning_set(S, Subset::whole(), n, eps, res);
                std::vector<Point> images;
                for (const auto& p : net) {
                    Point z = p;
                    for (int i = 0; i < n; ++i) z = S.step(z);
                    bool seen = false;
                    for (const auto& q : images)
                        if (S.dist(z, q) <= eps / 2) { seen = true; break; }
                    if (!seen) images.push_back(z);
                }
                t.add(n, std::log(static_cast<double>(images.size())));
            }
        }
        out.add(std::move(t));
    }
    return out;
}

EstimateTrace essential_spectral_potential(const SystemModel& S, const Observable& a,
                                           int n_max) {
    if (const Subshift* sh = S.as_subshift()) {
        if (!a.is_cylinder())
            throw std::invalid_argument(
                "essential_spectral_potential: shift weight must be cylinder");
        const auto it = shift_transfer_iteration(*sh, a, n_max, 0);
        EstimateTrace t("ell", 0.0, true);
        t.note("method", "exact cylinder matrix");
        for (int n = 1; n <= n_max; ++n) t.add(n, it.log_max[n - 1]);
        return t;
    }
    if (S.kind() == SystemModel::Kind::CircleRotation) {
        const auto& rot = static_cast<const CircleRotation&>(S);
        const int grid = 2048;
        std::vector<double> sums(grid, 0.0);
        EstimateTrace t("ell", 0.0, true);
        t.note("method", "backward orbit products, grid 2048");
        for (int n = 1; n <= n_max; ++n) {
            double best = kNegInf;
            for (int i = 0; i < grid; ++i) {
                const double x = static_cast<double>(i) / grid;
                double y = x - n * rot.theta();
                y -= std::floor(y);
                const double v = a(Point{y});
                sums[i] += v > 0.0 ? std::log(v) : kNegInf;
                best = std::max(best, sums[i]);
            }
            if (n_max <= 40 || n <= 20 || n == n_max || (n & (n - 1)) == 0)
                t.add(n, best);
        }
        return t;
    }
    const int cap = tree_depth_cap(S, n_max);
    const auto roots = S.essential_sample(128);
    const auto stats = preimage_tree_stats(S, roots, cap, &a);
    EstimateTrace t("ell", 0.0, true);
    t.note("method", "weighted preimage-tree sums within the essential set");
    for (int n = 1; n <= cap; ++n)
        t.add(n, stats.max_sum[n] > 0.0 ? std::log(stats.max_sum[n]) : kNegInf);
    return t;
}

std::optional<double> non_contracting_radius(const SystemModel& S) {
    auto sample = S.essential_sample(128);
    if (sample.size() > 256) sample.resize(256);
    for (double r : {S.diameter() / 4, S.diameter() / 8, S.diameter() / 16}) {
        bool ok = true;
        for (std::size_t i = 0; i < sample.size() && ok; ++i)
            for (std::size_t j = i + 1; j < sample.size() && ok; ++j) {
                const double d = S.dist(sample[i], sample[j]);
                if (d <= 0.0 || d > r) continue;
                if (S.dist(S.step(sample[i]), S.step(sample[j])) < d - 1e-12) ok = false;
            }
        if (ok) return r;
    }
    return std::nullopt;
}

PropertyStarVerdict check_property_star(const SystemModel& S, double eps, int n_max) {
    PropertyStarVerdict v;
    const auto r = non_contracting_radius(S);
    if (!r) {
        v.note = "no non-contracting radius found on sampled pairs";
        return v;
    }
    v.radius = *r;

    const auto F = essential_eps_net(S, eps);
    v.net_size = static_cast<int>(F.size());

    auto checks = S.essential_sample(
        std::min(1024, std::max(16, static_cast<int>(4.0 / eps))));
    const int cap = std::min(n_max, 8);
    for (int n = 1; n <= cap; ++n) {
        std::vector<Point> pool;
        for (const auto& f : F)
            for (const auto& y : preimages(S, f, n, true)) pool.push_back(y);
        for (const auto& x : checks) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& y : pool)
                best = std::min(best, dn_distance(S, x, y, n));
            if (best > eps + 1e-9) {
                v.note = "pull-back net fails to span at depth " + std::to_string(n);
                return v;
            }
        }
    }
    v.certified = true;
    v.note = "pull-back nets span through depth " + std::to_string(cap);
    return v;
}

} // namespace tfkit
