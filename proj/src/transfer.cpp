#include "tfkit/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace tfkit {

namespace {

constexpr double kZeroWeight = 1e-12;

double wrap01d(double x) {
    double y = std::fmod(x, 1.0);
    return y < 0.0 ? y + 1.0 : y;
}

double circled(double a, double b) {
    const double d = std::fabs(wrap01d(a) - wrap01d(b));
    return std::min(d, 1.0 - d);
}

// Depth-k cylinder cocycles act on (k-1)-word states; the matrix below is the
// exact action of A on functions constant on those cylinders.
struct WeightedMatrix {
    int m = 1;
    std::vector<std::vector<int>> nodes;
    std::vector<std::vector<double>> M;
};

WeightedMatrix build_weight_matrix(const Subshift& host, const Observable& a,
                                   const std::vector<std::vector<int>>* restrict_to) {
    const int alphabet = host.alphabet();
    auto eff = host.transitions();
    if (restrict_to)
        for (int i = 0; i < alphabet; ++i)
            for (int j = 0; j < alphabet; ++j)
                eff[i][j] = eff[i][j] && (*restrict_to)[i][j];

    const int k = std::max(1, a.cylinder_depth());
    WeightedMatrix wm;
    wm.m = std::max(1, k - 1);
    Subshift effective(alphabet, eff);
    wm.nodes = effective.admissible_words(wm.m);
    const int N = static_cast<int>(wm.nodes.size());
    wm.M.assign(N, std::vector<double>(N, 0.0));
    auto index_of = [&](const std::vector<int>& u) {
        return static_cast<int>(std::lower_bound(wm.nodes.begin(), wm.nodes.end(), u) -
                                wm.nodes.begin());
    };
    for (int j = 0; j < N; ++j) {
        const auto& u = wm.nodes[j];
        for (int s = 0; s < alphabet; ++s) {
            if (!eff[s][u[0]]) continue;
            std::vector<int> y = {s};
            y.insert(y.end(), u.begin(), u.end());
            std::vector<int> v(y.begin(), y.begin() + wm.m);
            std::vector<int> win(y.begin(), y.begin() + k);
            wm.M[j][index_of(v)] += a.on_word(win);
        }
    }
    return wm;
}

Point lerp_point(const Point& a, const Point& b, double t) {
    if (std::holds_alternative<double>(a))
        return std::get<double>(a) * (1.0 - t) + std::get<double>(b) * t;
    const auto& u = std::get<std::array<double, 2>>(a);
    const auto& v = std::get<std::array<double, 2>>(b);
    return std::array<double, 2>{u[0] * (1.0 - t) + v[0] * t,
                                 u[1] * (1.0 - t) + v[1] * t};
}

} // namespace

ShiftIteration shift_transfer_iteration(const Subshift& S, const Observable& a,
                                        int n_max, int extend,
                                        const std::vector<std::vector<int>>* restrict_to) {
    const auto wm = build_weight_matrix(S, a, restrict_to);
    const int N = static_cast<int>(wm.nodes.size());

    // Seed with the count of admissible extensions of the requested length.
    std::vector<double> f(N, 1.0);
    auto eff = S.transitions();
    if (restrict_to)
        for (std::size_t i = 0; i < eff.size(); ++i)
            for (std::size_t j = 0; j < eff.size(); ++j)
                eff[i][j] = eff[i][j] && (*restrict_to)[i][j];
    if (extend > 0) {
        std::vector<double> c(S.alphabet(), 1.0);
        for (int step = 0; step < extend; ++step) {
            std::vector<double> next(S.alphabet(), 0.0);
            for (int s = 0; s < S.alphabet(); ++s)
                for (int t = 0; t < S.alphabet(); ++t)
                    if (eff[s][t]) next[s] += c[t];
            c = std::move(next);
        }
        for (int j = 0; j < N; ++j) f[j] = c[wm.nodes[j].back()];
    }

    ShiftIteration out;
    out.states = N;
    std::vector<double> g(N);
    double offset = 0.0;
    bool dead = false;
    for (int n = 1; n <= n_max; ++n) {
        if (!dead) {
            for (int j = 0; j < N; ++j) {
                double s = 0.0;
                for (int v = 0; v < N; ++v) s += wm.M[j][v] * f[v];
                g[j] = s;
            }
            const double m = *std::max_element(g.begin(), g.end());
            if (m <= 0.0) dead = true;
            else {
                for (double& x : g) x /= m;
                offset += std::log(m);
                f = g;
            }
        }
        if (dead) {
            out.log_max.push_back(kNegInf);
            out.log_sum.push_back(kNegInf);
        } else {
            double sum = 0.0, mx = 0.0;
            for (double x : f) {
                sum += x;
                mx = std::max(mx, x);
            }
            out.log_max.push_back(offset + std::log(mx));
            out.log_sum.push_back(offset + std::log(sum));
        }
    }
    return out;
}

TransferOperator::TransferOperator(SystemPtr host, Observable cocycle, Form form)
    : host_(std::move(host)), cocycle_(std::move(cocycle)), form_(form) {}

TransferOperator perron_frobenius(SystemPtr S, Observable a) {
    if (a.min_value_hint() < -kZeroWeight)
        throw std::invalid_argument("perron_frobenius: weight must be nonnegative");
    if (S->kind() == SystemModel::Kind::SquareFixture)
        return TransferOperator(std::move(S), std::move(a),
                                TransferOperator::Form::Composition);
    if (S->kind() == SystemModel::Kind::PiecewiseCover) {
        const auto& pc = static_cast<const PiecewiseCover&>(*S);
        for (const auto& b : pc.branches()) {
            if (b.map != Branch::Map::Constant) continue;
            for (int i = 0; i <= 16; ++i) {
                const double x = b.lo + (b.hi - b.lo) * i / 16;
                if (std::fabs(a(Point{x})) > kZeroWeight)
                    throw std::invalid_argument(
                        "perron_frobenius: constant branch [" + std::to_string(b.lo) +
                        "," + std::to_string(b.hi) +
                        "] has non-discrete preimages and nonvanishing weight");
            }
        }
    }
    return TransferOperator(std::move(S), std::move(a),
                            TransferOperator::Form::Preimage);
}

TransferOperator with_weight(const TransferOperator& T, const Observable& g) {
    if (g.min_value_hint() < -kZeroWeight)
        throw std::invalid_argument("with_weight: weight must be nonnegative");
    TransferOperator out(T.host(), T.cocycle() * g, T.form());
    if (T.restriction()) out = out.restricted_to(*T.restriction());
    return out;
}

TransferOperator TransferOperator::restricted_to(Subset Y) const {
    TransferOperator out(host_, cocycle_, form_);
    out.restriction_ = std::move(Y);
    return out;
}

FunctionalAtPoint TransferOperator::functional_at(const Point& x) const {
    FunctionalAtPoint out;
    out.base = x;
    if (form_ == Form::Composition) {
        const auto b = SquareFixture::beta(std::get<std::array<double, 2>>(x));
        const Point y{b};
        if (!restriction_ || restriction_->contains(*host_, y))
            out.atoms.emplace_back(y, cocycle_(y));
        return out;
    }
    // Piecewise hosts resolve declared-essential structure (finite essential
    // sets turn constant-branch intervals into points); other hosts keep
    // their full preimage family.
    const bool essential_filter = host_->kind() == SystemModel::Kind::PiecewiseCover;
    const PreimageSet pre = host_->preimage(x, essential_filter);
    for (const Point& y : pre.points) {
        if (restriction_ && !restriction_->contains(*host_, y)) continue;
        const double w = cocycle_(y);
        if (w != 0.0) out.atoms.emplace_back(y, w);
    }
    for (const auto& iv : pre.intervals) {
        bool vanishing = true;
        for (int i = 0; i <= 8 && vanishing; ++i)
            vanishing = std::fabs(cocycle_(Point{iv[0] + (iv[1] - iv[0]) * i / 8})) <=
                        kZeroWeight;
        if (!vanishing) out.interval_supports.push_back(iv);
    }
    return out;
}

FunctionalAtPoint functional_family(const TransferOperator& T, const Point& x) {
    return T.functional_at(x);
}

double TransferOperator::iterate_one(const Point& x, int n) const {
    if (n == 0) return 1.0;
    double total = 0.0;
    const auto phi = functional_at(x);
    if (!phi.interval_supports.empty())
        throw NonDiscretePreimage(phi.interval_supports[0][0],
                                  phi.interval_supports[0][1]);
    for (const auto& [y, w] : phi.atoms) total += w * iterate_one(y, n - 1);
    return total;
}

namespace {

// Tree sums over metric hosts: acc[d] collects Phi_d per root.
void preimage_tree_sums(const TransferOperator& T, const Point& root, int n_max,
                        std::vector<double>& acc) {
    struct Frame {
        Point p;
        double prod;
        int depth;
    };
    std::vector<Frame> stack{{root, 1.0, 0}};
    while (!stack.empty()) {
        Frame fr = std::move(stack.back());
        stack.pop_back();
        if (fr.depth == n_max) continue;
        const auto phi = T.functional_at(fr.p);
        if (!phi.interval_supports.empty())
            throw NonDiscretePreimage(phi.interval_supports[0][0],
                                      phi.interval_supports[0][1]);
        for (const auto& [y, w] : phi.atoms) {
            const double prod = fr.prod * w;
            if (prod == 0.0) continue;
            acc[fr.depth + 1] += prod;
            stack.push_back({y, prod, fr.depth + 1});
        }
    }
}

EstimateTrace shift_spectral_trace(const TransferOperator& T, int n_max) {
    const Subshift* shift = T.host()->as_subshift();
    const Observable& a = T.cocycle();
    if (!a.is_cylinder())
        throw std::invalid_argument("spectral_potential: shift cocycle must be cylinder");
    const std::vector<std::vector<int>>* sub = nullptr;
    if (T.restriction() && T.restriction()->kind() == Subset::Kind::SubSFT)
        sub = &T.restriction()->transitions();
    const auto it = shift_transfer_iteration(*shift, a, n_max, 0, sub);
    EstimateTrace trace("lambda", 0.0, true);
    trace.note("method", "exact cylinder matrix");
    for (int n = 1; n <= n_max; ++n) trace.add(n, it.log_max[n - 1]);
    return trace;
}

EstimateTrace finite_map_spectral_trace(const TransferOperator& T, int n_max) {
    const auto& fm = static_cast<const FiniteMap&>(*T.host());
    const int N = fm.nodes();
    std::vector<double> f(N, 1.0), g(N);
    auto allowed = [&](int v) {
        return !T.restriction() || T.restriction()->contains(fm, Point{v});
    };
    EstimateTrace trace("lambda", 0.0, true);
    trace.note("method", "exact node matrix");
    double offset = 0.0;
    bool dead = false;
    for (int n = 1; n <= n_max; ++n) {
        if (!dead) {
            std::fill(g.begin(), g.end(), 0.0);
            for (int v = 0; v < N; ++v)
                if (allowed(v)) g[fm.image_of(v)] += T.cocycle()(Point{v}) * f[v];
            const double m = *std::max_element(g.begin(), g.end());
            if (m <= 0.0) dead = true;
            else {
                for (double& x : g) x /= m;
                offset += std::log(m);
                f = g;
            }
        }
        trace.add(n, dead ? kNegInf : offset);
    }
    return trace;
}

EstimateTrace rotation_spectral_trace(const TransferOperator& T, int n_max) {
    const auto& rot = static_cast<const CircleRotation&>(*T.host());
    const int grid = 4096;
    std::vector<double> sums(grid, 0.0);
    EstimateTrace trace("lambda", 0.0, true);
    trace.note("method", "backward orbit products, grid 4096");
    for (int n = 1; n <= n_max; ++n) {
        double best = kNegInf;
        for (int i = 0; i < grid; ++i) {
            const double x = static_cast<double>(i) / grid;
            const double y = wrap01d(x - n * rot.theta());
            const double a = T.cocycle()(Point{y});
            sums[i] += a > 0.0 ? std::log(a) : kNegInf;
            best = std::max(best, sums[i]);
        }
        const bool record = n_max <= 40 || n <= 20 || n == n_max || (n & (n - 1)) == 0;
        if (record) trace.add(n, best);
    }
    return trace;
}

EstimateTrace square_spectral_trace(const TransferOperator& T, int n_max) {
    std::vector<Point> roots = T.host()->essential_sample(64);
    for (const auto& p : T.host()->sample(24)) roots.push_back(p);
    std::vector<std::array<double, 2>> pos;
    std::vector<double> sums;
    for (const auto& p : roots) {
        pos.push_back(std::get<std::array<double, 2>>(p));
        sums.push_back(0.0);
    }
    EstimateTrace trace("lambda", 0.0, true);
    trace.note("method", "inner-branch orbit products");
    for (int n = 1; n <= n_max; ++n) {
        double best = kNegInf;
        for (std::size_t i = 0; i < pos.size(); ++i) {
            pos[i] = SquareFixture::beta(pos[i]);
            const double a = T.cocycle()(Point{pos[i]});
            sums[i] += a > 0.0 ? std::log(a) : kNegInf;
            best = std::max(best, sums[i]);
        }
        trace.add(n, best);
    }
    return trace;
}

EstimateTrace tree_spectral_trace(const TransferOperator& T, int n_max) {
    const int res = T.host()->sheet_bound() >= 3 ? 64 : 256;
    const auto roots = T.host()->essential_sample(res);
    std::vector<double> best(n_max + 1, 0.0);
    for (const Point& root : roots) {
        std::vector<double> acc(n_max + 1, 0.0);
        preimage_tree_sums(T, root, n_max, acc);
        for (int d = 1; d <= n_max; ++d) best[d] = std::max(best[d], acc[d]);
    }
    EstimateTrace trace("lambda", 0.0, true);
    trace.note("method", "preimage tree sums, roots " + std::to_string(roots.size()));
    for (int n = 1; n <= n_max; ++n)
        trace.add(n, best[n] > 0.0 ? std::log(best[n]) : kNegInf);
    return trace;
}

} // namespace

EstimateTrace spectral_potential(const TransferOperator& T, int n_max) {
    if (n_max < 1) throw std::invalid_argument("spectral_potential: n_max >= 1");
    switch (T.host()->kind()) {
    case SystemModel::Kind::Subshift:
        return shift_spectral_trace(T, n_max);
    case SystemModel::Kind::FiniteMap:
        return finite_map_spectral_trace(T, n_max);
    case SystemModel::Kind::CircleRotation:
        return rotation_spectral_trace(T, n_max);
    case SystemModel::Kind::SquareFixture:
        return square_spectral_trace(T, n_max);
    case SystemModel::Kind::PiecewiseCover:
    case SystemModel::Kind::LadderFixture:
    case SystemModel::Kind::CantorShift:
        return tree_spectral_trace(T, std::min(n_max, 16));
    }
    throw std::logic_error("spectral_potential: unsupported host");
}

double sft_spectral_oracle(const Subshift& S, const Observable& a) {
    const auto wm = build_weight_matrix(S, a, nullptr);
    const int N = static_cast<int>(wm.nodes.size());
    double scale = 0.0;
    for (const auto& row : wm.M)
        for (double v : row) scale = std::max(scale, v);
    if (scale <= 0.0) return kNegInf;

    // Power iteration on M + I: strictly positive diagonal kills periodicity
    // and shifts the dominant eigenvalue by exactly 1.
    std::vector<double> v(N, 1.0), w(N);
    double lambda = 0.0;
    for (int iter = 0; iter < 1000000; ++iter) {
        for (int i = 0; i < N; ++i) {
            double s = v[i];
            for (int j = 0; j < N; ++j) s += wm.M[i][j] * v[j];
            w[i] = s;
        }
        const double norm = *std::max_element(w.begin(), w.end());
        for (double& x : w) x /= norm;
        double resid = 0.0;
        for (int i = 0; i < N; ++i) resid = std::max(resid, std::fabs(w[i] - v[i]));
        v = w;
        lambda = norm;
        if (resid < 1e-14) break;
    }
    return std::log(lambda - 1.0);
}

std::string CompatibilityVerdict::str() const {
    std::ostringstream os;
    if (compatible) {
        os << "COMPATIBLE";
        if (!note.empty()) os << " (" << note << ")";
    } else {
        os << "INCOMPATIBLE witness " << point_str(*witness) << " jump " << jump;
    }
    return os.str();
}

namespace {

// phi_{Y,x}[f] for a hat-function test family centered at the given points.
std::vector<double> functional_values(const TransferOperator& T, const Point& x,
                                      const std::vector<Point>& centers, double width) {
    std::vector<double> out(centers.size(), 0.0);
    const auto phi = T.functional_at(x);
    for (const auto& [y, w] : phi.atoms)
        for (std::size_t i = 0; i < centers.size(); ++i) {
            const double d = T.host()->dist(y, centers[i]);
            if (d < width) out[i] += w * (1.0 - d / width);
        }
    return out;
}

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
    double g = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        g = std::max(g, std::fabs(a[i] - b[i]));
    return g;
}

} // namespace

CompatibilityVerdict check_compatibility(const TransferOperator& T, const Subset& Y,
                                         int resolution) {
    const SystemModel& S = *T.host();
    TransferOperator TY = T.restricted_to(Y);

    CompatibilityVerdict v;
    // Symbolic and discrete hosts: the functional data is locally constant on
    // cylinders (resp. the topology is discrete), so the scan is exact.
    if (S.kind() == SystemModel::Kind::Subshift ||
        S.kind() == SystemModel::Kind::CantorShift ||
        S.kind() == SystemModel::Kind::FiniteMap) {
        v.compatible = true;
        v.note = "locally constant functional family";
        return v;
    }

    const auto chains = Y.chains(S, resolution);

    // Forward invariance of Y at the probed resolution.
    for (const auto& chain : chains)
        for (const Point& p : chain)
            if (!Y.contains(S, S.step(p), 1e-6))
                throw std::invalid_argument("check_compatibility: subset not forward "
                                            "invariant, escaping point " + point_str(p));

    // Hat test family over a subsample of the chains.
    std::vector<Point> centers;
    for (const auto& chain : chains) {
        const std::size_t stride = std::max<std::size_t>(1, chain.size() / 64);
        for (std::size_t i = 0; i < chain.size(); i += stride) centers.push_back(chain[i]);
        centers.push_back(chain.back());
    }
    const double width = 0.02 * S.diameter();

    // Every pair above the threshold is a candidate; a steep-but-continuous
    // stretch can out-score a genuine jump, so all of them get refined.
    struct Candidate {
        Point a, b;
        double gap;
    };
    std::vector<Candidate> offenders;
    for (const auto& chain : chains) {
        if (chain.size() < 2) continue;
        auto prev = functional_values(TY, chain[0], centers, width);
        for (std::size_t i = 1; i < chain.size(); ++i) {
            auto cur = functional_values(TY, chain[i], centers, width);
            const double g = max_gap(prev, cur);
            if (g >= 0.05 && offenders.size() < 4000)
                offenders.push_back({chain[i - 1], chain[i], g});
            prev = std::move(cur);
        }
    }

    if (offenders.empty()) {
        v.compatible = true;
        v.note = "no jump above 0.05 at resolution " + std::to_string(resolution);
        return v;
    }

    // Bisect each offending pair; a jump that survives vanishing spacing is a
    // genuine *-weak discontinuity.
    std::sort(offenders.begin(), offenders.end(),
              [](const Candidate& x, const Candidate& y) { return x.gap > y.gap; });
    for (const Candidate& cand : offenders) {
        Point a = cand.a, b = cand.b;
        auto fa = functional_values(TY, a, centers, width);
        auto fb = functional_values(TY, b, centers, width);
        for (int iter = 0; iter < 45; ++iter) {
            const Point m = lerp_point(a, b, 0.5);
            auto fm = functional_values(TY, m, centers, width);
            if (max_gap(fa, fm) >= max_gap(fm, fb)) {
                b = m;
                fb = std::move(fm);
            } else {
                a = m;
                fa = std::move(fm);
            }
        }
        const double final_jump = max_gap(fa, fb);
        if (final_jump >= std::max(0.05, 0.5 * cand.gap)) {
            v.compatible = false;
            v.witness = lerp_point(a, b, 0.5);
            v.jump = final_jump;
            return v;
        }
    }
    v.compatible = true;
    v.note = "all " + std::to_string(offenders.size()) +
             " candidate jumps dissolved under refinement";
    return v;
}

TransferOperator trace_operator(const TransferOperator& T, const Subset& Y) {
    const auto verdict = check_compatibility(T, Y, 512);
    if (!verdict.compatible)
        throw std::runtime_error("trace_operator: incompatible subset, " + verdict.str());
    return T.restricted_to(Y);
}

Observable cocycle_of(const TransferOperator& T, const Subset&) {
    return T.cocycle();
}

namespace {

PointFlags classify_piecewise(const PiecewiseCover& pc, double x) {
    const double tol = 1e-9;

    struct Germ {
        bool constant;
        double deriv;
        double value;
    };
    auto germ_at = [&](const Branch& b, double at) {
        Germ g{b.map == Branch::Map::Constant, 0.0, b.apply(at)};
        if (b.map == Branch::Map::Affine) g.deriv = b.slope;
        if (b.map == Branch::Map::Square) g.deriv = at > tol ? 2.0 * at : 1e-9;
        return g;
    };

    const double lo = pc.domain_lo(), hi = pc.domain_hi();
    std::optional<Germ> left, right, interior;
    for (const auto& b : pc.branches()) {
        if (x > b.lo + tol && x < b.hi - tol) interior = germ_at(b, x);
        if (std::fabs(b.lo - x) <= tol) right = germ_at(b, x);
        if (std::fabs(b.hi - x) <= tol) left = germ_at(b, x);
    }
    if (pc.circle()) {
        // The domain endpoints are glued; germs wrap around.
        if (std::fabs(x - lo) <= tol)
            for (const auto& b : pc.branches())
                if (std::fabs(b.hi - hi) <= tol) left = germ_at(b, hi);
        if (std::fabs(x - hi) <= tol)
            for (const auto& b : pc.branches())
                if (std::fabs(b.lo - lo) <= tol) right = germ_at(b, lo);
    }

    PointFlags f;
    if (interior && !left && !right) {
        if (interior->constant) return f;
        f.lip = f.lop = f.lhp = true;
        return f;
    }
    if ((left && left->constant) || (right && right->constant)) return f;
    if (left && right) {
        const double gap = pc.circle() ? circled(left->value, right->value)
                                       : std::fabs(left->value - right->value);
        if (gap > 1e-6) {
            f.lip = true; // disjoint one-sided images
            return f;
        }
        if (left->deriv * right->deriv > 0.0) {
            f.lip = f.lop = f.lhp = true;
            return f;
        }
        return f; // fold
    }
    const Germ& g = left ? *left : *right;
    f.lip = true;
    // One-sided image is a space neighborhood only at matching boundaries.
    const bool from_left = static_cast<bool>(left);
    const bool image_up = from_left ? g.deriv < 0.0 : g.deriv > 0.0;
    f.lop = image_up ? std::fabs(g.value - lo) <= 1e-9
                     : std::fabs(g.value - hi) <= 1e-9;
    f.lhp = f.lip && f.lop;
    return f;
}

PointFlags classify_ladder(const std::array<double, 2>& x, bool right_half) {
    const double lo = right_half ? 0.5 : 0.0;
    PointFlags f;
    const int lvl = LadderFixture::level_of(x[1]);
    if (lvl != 0) {
        // Rows other than y = 1 translate up one level (or stay, on y = 0).
        f.lip = f.lop = f.lhp = true;
        return f;
    }
    f.lip = true; // sqrt is injective
    const double img = std::sqrt(x[0]);
    const bool at_left_edge = std::fabs(x[0] - lo) <= 1e-9;
    const bool img_interior = img > lo + 1e-9 && img < 1.0 - 1e-9;
    f.lop = !(at_left_edge && img_interior);
    f.lhp = f.lip && f.lop;
    return f;
}

} // namespace

PointFlags classify_point(const SystemModel& S, const Point& x, const Subset* within) {
    switch (S.kind()) {
    case SystemModel::Kind::PiecewiseCover:
        return classify_piecewise(static_cast<const PiecewiseCover&>(S),
                                  std::get<double>(x));
    case SystemModel::Kind::LadderFixture:
        return classify_ladder(std::get<std::array<double, 2>>(x),
                               within && within->kind() == Subset::Kind::LadderRight);
    default:
        throw std::invalid_argument(
            "classify_point: neighborhood probing needs a piecewise or ladder host");
    }
}

} // namespace tfkit
