#include "tfkit/system.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace tfkit {

namespace {

constexpr double kTol = 1e-12;
constexpr double kGeomTol = 1e-9;

double circle_dist(double x, double y) {
    double d = std::fabs(x - y);
    d -= std::floor(d);
    return std::min(d, 1.0 - d);
}

double wrap01(double x) {
    x -= std::floor(x);
    if (x >= 1.0) x -= 1.0;
    return x;
}

void push_unique(std::vector<Point>& pts, const Point& p) {
    for (const auto& q : pts)
        if (point_close(q, p, kGeomTol)) return;
    pts.push_back(p);
}

} // namespace

const Subshift* SystemModel::as_subshift() const {
    return kind() == Kind::Subshift ? static_cast<const Subshift*>(this) : nullptr;
}

// -------------------------------------------------------------------------
// Subset

Subset Subset::whole() { return Subset{}; }

Subset Subset::finite_points(std::vector<Point> pts) {
    Subset s;
    s.kind_ = Kind::FinitePoints;
    s.points_ = std::move(pts);
    return s;
}

Subset Subset::sub_sft(std::vector<std::vector<int>> transitions) {
    Subset s;
    s.kind_ = Kind::SubSFT;
    s.transitions_ = std::move(transitions);
    return s;
}

Subset Subset::interval_union(std::vector<std::array<double, 2>> ivs) {
    Subset s;
    s.kind_ = Kind::IntervalUnion;
    s.intervals_ = std::move(ivs);
    return s;
}

Subset Subset::named(Kind k) {
    Subset s;
    s.kind_ = k;
    return s;
}

bool Subset::contains(const SystemModel&, const Point& p, double tol) const {
    switch (kind_) {
    case Kind::Whole:
        return true;
    case Kind::FinitePoints:
        for (const auto& q : points_)
            if (point_close(q, p, tol)) return true;
        return false;
    case Kind::SubSFT: {
        const Word& w = std::get<Word>(p);
        const std::size_t n = w.head.size() + w.cycle.size() + 1;
        for (std::size_t i = 0; i < n; ++i)
            if (!transitions_[w.at(i)][w.at(i + 1)]) return false;
        return true;
    }
    case Kind::IntervalUnion: {
        const double x = std::get<double>(p);
        for (const auto& iv : intervals_)
            if (x >= iv[0] - tol && x <= iv[1] + tol) return true;
        return false;
    }
    case Kind::SquareRows01: {
        const auto& xy = std::get<std::array<double, 2>>(p);
        return std::fabs(xy[1]) <= tol || std::fabs(xy[1] - 1.0) <= tol;
    }
    case Kind::SquareDelta: {
        const auto& xy = std::get<std::array<double, 2>>(p);
        return std::fabs(xy[1]) <= tol ||
               (std::fabs(xy[0]) <= tol && std::fabs(xy[1] - 1.0) <= tol);
    }
    case Kind::LadderRight: {
        const auto& xy = std::get<std::array<double, 2>>(p);
        return xy[0] >= 0.5 - tol;
    }
    }
    return false;
}

std::vector<std::vector<Point>> Subset::chains(const SystemModel& S, int resolution) const {
    std::vector<std::vector<Point>> out;
    auto grid_chain = [&](double a, double b, double y, bool planar) {
        std::vector<Point> chain;
        for (int i = 0; i <= resolution; ++i) {
            const double t = a + (b - a) * i / resolution;
            if (planar)
                chain.push_back(std::array<double, 2>{t, y});
            else
                chain.push_back(t);
        }
        out.push_back(std::move(chain));
    };
    switch (kind_) {
    case Kind::Whole:
        for (const auto& p : S.sample(resolution)) out.push_back({p});
        break;
    case Kind::FinitePoints:
        for (const auto& p : points_) out.push_back({p});
        break;
    case Kind::SubSFT: {
        const auto* sh = S.as_subshift();
        Subshift sub(sh ? sh->alphabet() : static_cast<int>(transitions_.size()),
                     transitions_);
        for (const auto& p : sub.sample(std::min(resolution, 10))) out.push_back({p});
        break;
    }
    case Kind::IntervalUnion:
        for (const auto& iv : intervals_) grid_chain(iv[0], iv[1], 0.0, false);
        break;
    case Kind::SquareRows01:
        grid_chain(0.0, 1.0, 0.0, true);
        grid_chain(0.0, 1.0, 1.0, true);
        break;
    case Kind::SquareDelta:
        grid_chain(0.0, 1.0, 0.0, true);
        out.push_back({std::array<double, 2>{0.0, 1.0}});
        break;
    case Kind::LadderRight:
        grid_chain(0.5, 1.0, 0.0, true);
        for (int lvl = 0; lvl <= 8; ++lvl)
            grid_chain(0.5, 1.0, std::ldexp(1.0, -lvl), true);
        break;
    }
    return out;
}

std::string Subset::str() const {
    switch (kind_) {
    case Kind::Whole: return "whole";
    case Kind::FinitePoints: return "finite_points";
    case Kind::SubSFT: return "sub_sft";
    case Kind::IntervalUnion: return "interval_union";
    case Kind::SquareRows01: return "square_rows01";
    case Kind::SquareDelta: return "square_delta";
    case Kind::LadderRight: return "ladder_right";
    }
    return "?";
}

// -------------------------------------------------------------------------
// Subshift

Subshift::Subshift(int alphabet, std::vector<std::vector<int>> transitions)
    : alphabet_(alphabet), transitions_(std::move(transitions)) {
    if (static_cast<int>(transitions_.size()) != alphabet)
        throw std::invalid_argument("subshift: transition matrix must be square");
    for (int i = 0; i < alphabet; ++i) {
        if (static_cast<int>(transitions_[i].size()) != alphabet)
            throw std::invalid_argument("subshift: transition matrix must be square");
        bool any = false;
        for (int j = 0; j < alphabet; ++j) any = any || transitions_[i][j];
        if (!any)
            throw std::invalid_argument("subshift: row " + std::to_string(i) +
                                        " is all zero; shift map would not be total");
    }
}

std::string Subshift::name() const {
    std::ostringstream os;
    os << "subshift(" << alphabet_ << ")";
    return os.str();
}

Point Subshift::step(const Point& x) const { return std::get<Word>(x).shifted(); }

double Subshift::dist(const Point& x, const Point& y) const {
    const std::size_t k = Word::first_disagreement(std::get<Word>(x), std::get<Word>(y));
    return k == 0 ? 0.0 : std::ldexp(1.0, -static_cast<int>(k));
}

PreimageSet Subshift::preimage(const Point& x, bool) const {
    const Word& w = std::get<Word>(x);
    PreimageSet out;
    for (int s = 0; s < alphabet_; ++s)
        if (transitions_[s][w.at(0)]) out.points.push_back(w.prepended(s));
    return out;
}

int Subshift::sheet_bound() const {
    int best = 0;
    for (int j = 0; j < alphabet_; ++j) {
        int c = 0;
        for (int i = 0; i < alphabet_; ++i) c += transitions_[i][j] ? 1 : 0;
        best = std::max(best, c);
    }
    return best;
}

bool Subshift::admissible(const std::vector<int>& w) const {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (!transitions_[w[i]][w[i + 1]]) return false;
    return true;
}

bool Subshift::contains(const Word& w) const {
    const std::size_t n = w.head.size() + w.cycle.size() + 1;
    for (std::size_t i = 0; i < n; ++i)
        if (!transitions_[w.at(i)][w.at(i + 1)]) return false;
    return true;
}

std::vector<std::vector<int>> Subshift::admissible_words(int n) const {
    std::vector<std::vector<int>> out, cur;
    for (int s = 0; s < alphabet_; ++s) cur.push_back({s});
    for (int len = 1; len < n; ++len) {
        std::vector<std::vector<int>> next;
        for (auto& w : cur)
            for (int s = 0; s < alphabet_; ++s)
                if (transitions_[w.back()][s]) {
                    auto v = w;
                    v.push_back(s);
                    next.push_back(std::move(v));
                }
        cur = std::move(next);
    }
    return cur;
}

Word Subshift::rep_of(const std::vector<int>& w) const {
    // Extend past the word along least admissible successors until a symbol
    // repeats; the repetition closes the periodic tail.
    std::vector<int> ext = w;
    std::vector<int> seen_at(alphabet_, -1);
    int s = ext.back();
    for (;;) {
        if (seen_at[s] >= 0) {
            std::vector<int> head(ext.begin(), ext.begin() + seen_at[s]);
            std::vector<int> cycle(ext.begin() + seen_at[s], ext.end() - 1);
            return Word(std::move(head), std::move(cycle));
        }
        seen_at[s] = static_cast<int>(ext.size()) - 1;
        int t = 0;
        while (!transitions_[s][t]) ++t;
        ext.push_back(t);
        s = t;
    }
}

std::vector<Point> Subshift::cylinder_reps(int n) const {
    std::vector<Point> out;
    for (const auto& w : admissible_words(n)) out.push_back(rep_of(w));
    return out;
}

std::vector<Point> Subshift::sample(int depth) const {
    return cylinder_reps(std::max(1, std::min(depth, 14)));
}

// -------------------------------------------------------------------------
// PiecewiseCover

double Branch::apply(double x) const {
    switch (map) {
    case Map::Affine: return slope * x + offset;
    case Map::Constant: return offset;
    case Map::Square: return x * x;
    }
    return 0.0;
}

PiecewiseCover::PiecewiseCover(std::vector<Branch> branches, bool circle, std::string name)
    : branches_(std::move(branches)), circle_(circle), name_(std::move(name)) {
    if (branches_.empty()) throw std::invalid_argument("piecewise: no branches");
    std::sort(branches_.begin(), branches_.end(),
              [](const Branch& a, const Branch& b) { return a.lo < b.lo; });
    lo_ = branches_.front().lo;
    hi_ = branches_.front().hi;
    for (const auto& b : branches_) {
        if (b.lo > hi_ + kGeomTol)
            throw std::invalid_argument("piecewise: branch intervals do not cover the domain");
        hi_ = std::max(hi_, b.hi);
    }
    // Overlapping interiors must agree in value.
    for (std::size_t i = 0; i + 1 < branches_.size(); ++i) {
        const auto& a = branches_[i];
        const auto& b = branches_[i + 1];
        if (b.lo < a.hi - kGeomTol) {
            const double mid = (b.lo + a.hi) / 2;
            if (std::fabs(a.apply(mid) - b.apply(mid)) > kGeomTol)
                throw std::invalid_argument(
                    "piecewise: overlapping branch interiors with inconsistent values");
        }
    }
}

const Branch& PiecewiseCover::branch_of(double x) const {
    // Shared endpoints belong to the left-closed (right-hand) branch.
    for (auto it = branches_.rbegin(); it != branches_.rend(); ++it)
        if (x >= it->lo - kTol && x < it->hi) return *it;
    return branches_.back().hi <= x + kGeomTol ? branches_.back() : branches_.front();
}

Point PiecewiseCover::step(const Point& x) const {
    const double v = std::get<double>(x);
    double y = branch_of(v).apply(v);
    return circle_ ? wrap01(y) : y;
}

double PiecewiseCover::dist(const Point& x, const Point& y) const {
    const double a = std::get<double>(x), b = std::get<double>(y);
    return circle_ ? circle_dist(a, b) : std::fabs(a - b);
}

PreimageSet PiecewiseCover::preimage(const Point& xp, bool within_essential) const {
    const double y = std::get<double>(xp);
    PreimageSet out;
    for (const auto& b : branches_) {
        switch (b.map) {
        case Branch::Map::Affine:
            for (int k = circle_ ? -2 : 0; k <= (circle_ ? 2 : 0); ++k) {
                const double x = (y + k - b.offset) / b.slope;
                if (x >= b.lo - kGeomTol && x <= b.hi + kGeomTol) {
                    double p = std::clamp(x, b.lo, b.hi);
                    // On the circle the endpoints 0 and 1 are the same point.
                    if (circle_ && p >= 1.0 - kGeomTol) p = 0.0;
                    push_unique(out.points, p);
                }
            }
            break;
        case Branch::Map::Constant:
            if (std::fabs(y - b.offset) <= kGeomTol)
                out.intervals.push_back({b.lo, b.hi});
            break;
        case Branch::Map::Square:
            if (y >= -kGeomTol) {
                const double x = std::sqrt(std::max(0.0, y));
                if (x >= b.lo - kGeomTol && x <= b.hi + kGeomTol)
                    push_unique(out.points, std::clamp(x, b.lo, b.hi));
            }
            break;
        }
    }
    if (within_essential && essential_) {
        std::vector<Point> kept;
        for (const auto& p : out.points)
            if (essential_->contains(*this, p, kGeomTol)) kept.push_back(p);
        // A non-discrete interval meets a finite essential set in finitely
        // many points.
        if (essential_->kind() == Subset::Kind::FinitePoints) {
            for (const auto& iv : out.intervals)
                for (const auto& q : essential_->points()) {
                    const double v = std::get<double>(q);
                    if (v >= iv[0] - kGeomTol && v <= iv[1] + kGeomTol)
                        push_unique(kept, v);
                }
            out.intervals.clear();
        }
        out.points = std::move(kept);
    }
    return out;
}

double PiecewiseCover::diameter() const {
    return circle_ ? 0.5 : hi_ - lo_;
}

std::vector<Point> PiecewiseCover::sample(int resolution) const {
    std::vector<Point> out;
    const int n = std::max(2, resolution);
    const int last = circle_ ? n - 1 : n;
    for (int i = 0; i <= last; ++i) out.push_back(lo_ + (hi_ - lo_) * i / n);
    return out;
}

std::vector<Point> PiecewiseCover::essential_sample(int resolution) const {
    if (!essential_) return sample(resolution);
    switch (essential_->kind()) {
    case Subset::Kind::FinitePoints:
        return essential_->points();
    case Subset::Kind::IntervalUnion: {
        std::vector<Point> out;
        for (const auto& iv : essential_->intervals())
            for (int i = 0; i <= resolution; ++i)
                out.push_back(iv[0] + (iv[1] - iv[0]) * i / resolution);
        return out;
    }
    default:
        return sample(resolution);
    }
}

bool PiecewiseCover::in_essential(const Point& p) const {
    return !essential_ || essential_->contains(*this, p, kGeomTol);
}

// -------------------------------------------------------------------------
// CircleRotation

Point CircleRotation::step(const Point& x) const {
    return wrap01(std::get<double>(x) + theta_);
}

double CircleRotation::dist(const Point& x, const Point& y) const {
    return circle_dist(std::get<double>(x), std::get<double>(y));
}

PreimageSet CircleRotation::preimage(const Point& x, bool) const {
    PreimageSet out;
    out.points.push_back(wrap01(std::get<double>(x) - theta_));
    return out;
}

std::vector<Point> CircleRotation::sample(int resolution) const {
    std::vector<Point> out;
    const int n = std::max(2, resolution);
    for (int i = 0; i < n; ++i) out.push_back(static_cast<double>(i) / n);
    return out;
}

// -------------------------------------------------------------------------
// FiniteMap

FiniteMap::FiniteMap(int nodes, std::vector<int> image)
    : nodes_(nodes), image_(std::move(image)) {
    if (static_cast<int>(image_.size()) != nodes)
        throw std::invalid_argument("finite map: image must cover every node");
    for (int v : image_)
        if (v < 0 || v >= nodes)
            throw std::invalid_argument("finite map: image target out of range");
    // A node is periodic iff iterating far enough returns to it.
    std::vector<char> on_cycle(nodes, 0);
    for (int v = 0; v < nodes_; ++v) {
        int z = v;
        for (int i = 0; i < nodes_; ++i) z = image_[z];
        // z is on the eventual cycle of v; walk the cycle.
        int w = z;
        do {
            on_cycle[w] = 1;
            w = image_[w];
        } while (w != z);
    }
    for (int v = 0; v < nodes_; ++v)
        if (on_cycle[v]) periodic_.push_back(v);
}

Point FiniteMap::step(const Point& x) const { return image_[std::get<int>(x)]; }

double FiniteMap::dist(const Point& x, const Point& y) const {
    return std::get<int>(x) == std::get<int>(y) ? 0.0 : 1.0;
}

PreimageSet FiniteMap::preimage(const Point& x, bool within_essential) const {
    const int v = std::get<int>(x);
    PreimageSet out;
    for (int u = 0; u < nodes_; ++u)
        if (image_[u] == v && (!within_essential || in_essential(u)))
            out.points.push_back(u);
    return out;
}

int FiniteMap::sheet_bound() const {
    std::vector<int> cnt(nodes_, 0);
    for (int v : image_) ++cnt[v];
    return *std::max_element(cnt.begin(), cnt.end());
}

std::vector<Point> FiniteMap::sample(int) const {
    std::vector<Point> out;
    for (int v = 0; v < nodes_; ++v) out.push_back(v);
    return out;
}

std::vector<Point> FiniteMap::essential_sample(int) const {
    std::vector<Point> out;
    for (int v : periodic_) out.push_back(v);
    return out;
}

bool FiniteMap::in_essential(const Point& p) const {
    const int v = std::get<int>(p);
    return std::find(periodic_.begin(), periodic_.end(), v) != periodic_.end();
}

// -------------------------------------------------------------------------
// SquareFixture

std::array<double, 2> SquareFixture::beta(const std::array<double, 2>& x) {
    return {x[0], x[1] * x[1] * (2.0 - x[0]) / 2.0};
}

Point SquareFixture::step(const Point& p) const {
    const auto& x = std::get<std::array<double, 2>>(p);
    if (in_delta2(x)) return std::array<double, 2>{x[0], 1.0};
    return std::array<double, 2>{x[0], std::sqrt(2.0 * x[1] / (2.0 - x[0]))};
}

double SquareFixture::dist(const Point& p, const Point& q) const {
    const auto& x = std::get<std::array<double, 2>>(p);
    const auto& y = std::get<std::array<double, 2>>(q);
    return std::hypot(x[0] - y[0], x[1] - y[1]);
}

PreimageSet SquareFixture::preimage(const Point& p, bool within_essential) const {
    const auto& x = std::get<std::array<double, 2>>(p);
    PreimageSet out;
    const auto b = beta(x); // the Delta_1 branch preimage, always valid
    if (!within_essential || in_essential(b)) out.points.push_back(b);
    if (std::fabs(x[1] - 1.0) <= kGeomTol) {
        const double cut = (2.0 - x[0]) / 2.0;
        if (cut < 1.0 - kGeomTol) {
            if (within_essential)
                push_unique(out.points, std::array<double, 2>{x[0], 1.0});
            else
                out.intervals.push_back({cut, 1.0});
        }
    }
    return out;
}

std::vector<Point> SquareFixture::sample(int resolution) const {
    std::vector<Point> out;
    const int n = std::max(2, resolution);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            out.push_back(std::array<double, 2>{static_cast<double>(i) / n,
                                                static_cast<double>(j) / n});
    return out;
}

std::vector<Point> SquareFixture::essential_sample(int resolution) const {
    std::vector<Point> out;
    const int n = std::max(2, resolution);
    for (int i = 0; i <= n; ++i) {
        out.push_back(std::array<double, 2>{static_cast<double>(i) / n, 0.0});
        out.push_back(std::array<double, 2>{static_cast<double>(i) / n, 1.0});
    }
    return out;
}

bool SquareFixture::in_essential(const Point& p) const {
    const auto& x = std::get<std::array<double, 2>>(p);
    return std::fabs(x[1]) <= kGeomTol || std::fabs(x[1] - 1.0) <= kGeomTol;
}

// -------------------------------------------------------------------------
// LadderFixture

int LadderFixture::level_of(double y) {
    if (y <= 1e-9) return -1;
    return static_cast<int>(std::lround(-std::log2(y)));
}

Point LadderFixture::step(const Point& p) const {
    const auto& x = std::get<std::array<double, 2>>(p);
    const int lvl = level_of(x[1]);
    if (lvl < 0) return x;
    if (lvl == 0) return std::array<double, 2>{std::sqrt(x[0]), 1.0};
    return std::array<double, 2>{x[0], std::ldexp(1.0, -(lvl - 1))};
}

double LadderFixture::dist(const Point& p, const Point& q) const {
    const auto& x = std::get<std::array<double, 2>>(p);
    const auto& y = std::get<std::array<double, 2>>(q);
    return std::hypot(x[0] - y[0], x[1] - y[1]);
}

PreimageSet LadderFixture::preimage(const Point& p, bool within_essential) const {
    const auto& x = std::get<std::array<double, 2>>(p);
    const int lvl = level_of(x[1]);
    PreimageSet out;
    auto keep = [&](std::array<double, 2> q) {
        if (!within_essential || in_essential(q)) out.points.push_back(q);
    };
    if (lvl < 0) {
        keep({x[0], 0.0});
    } else {
        keep({x[0], std::ldexp(1.0, -(lvl + 1))});
        if (lvl == 0) keep({x[0] * x[0], 1.0});
    }
    return out;
}

std::vector<Point> LadderFixture::sample(int resolution) const {
    std::vector<Point> out;
    const int n = std::max(2, resolution);
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        out.push_back(std::array<double, 2>{t, 0.0});
        for (int lvl = 0; lvl <= 6; ++lvl)
            out.push_back(std::array<double, 2>{t, std::ldexp(1.0, -lvl)});
    }
    return out;
}

std::vector<Point> LadderFixture::essential_sample(int resolution) const {
    std::vector<Point> out;
    const int n = std::max(2, resolution);
    for (int i = 0; i <= n; ++i)
        out.push_back(std::array<double, 2>{static_cast<double>(i) / n, 0.0});
    out.push_back(std::array<double, 2>{0.0, 1.0});
    out.push_back(std::array<double, 2>{1.0, 1.0});
    return out;
}

bool LadderFixture::in_essential(const Point& p) const {
    const auto& x = std::get<std::array<double, 2>>(p);
    if (std::fabs(x[1]) <= kGeomTol) return true;
    if (std::fabs(x[1] - 1.0) <= kGeomTol)
        return std::fabs(x[0]) <= kGeomTol || std::fabs(x[0] - 1.0) <= kGeomTol;
    return false;
}

// -------------------------------------------------------------------------
// CantorShift

bool CantorShift::window_admissible(const std::vector<int>& w) {
    const int n = static_cast<int>(w.size());
    std::vector<int> twos(n + 1, 0);
    for (int i = 0; i < n; ++i) twos[i + 1] = twos[i] + (w[i] == 2 ? 1 : 0);
    for (int k = 1, len = 2; len <= n; ++k, len *= 2)
        for (int i = 0; i + len <= n; ++i)
            if (twos[i + len] - twos[i] > k) return false;
    return true;
}

Point CantorShift::step(const Point& x) const { return std::get<Word>(x).shifted(); }

double CantorShift::dist(const Point& x, const Point& y) const {
    const std::size_t k = Word::first_disagreement(std::get<Word>(x), std::get<Word>(y));
    return k == 0 ? 0.0 : std::ldexp(1.0, -static_cast<int>(k));
}

bool CantorShift::in_essential(const Point& p) const {
    return std::get<Word>(p) == Word::constant(0);
}

PreimageSet CantorShift::preimage(const Point& x, bool within_essential) const {
    const Word& w = std::get<Word>(x);
    PreimageSet out;
    for (int s : {0, 2}) {
        Word e = w.prepended(s);
        if (within_essential && !in_essential(e)) continue;
        // Validate the windows meeting the new head against zero tail.
        std::vector<int> probe = e.head;
        const std::size_t pad = 2 * probe.size() + 32;
        for (std::size_t i = 0; i < pad; ++i) probe.push_back(e.at(e.head.size() + i));
        if (window_admissible(probe)) out.points.push_back(e);
    }
    return out;
}

std::vector<std::vector<int>> CantorShift::admissible_words(int n) const {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == n) {
            out.push_back(cur);
            return;
        }
        for (int s : {0, 2}) {
            cur.push_back(s);
            if (window_admissible(cur)) self(self, depth + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<int> CantorShift::densest_sequence(int n) {
    std::vector<int> w;
    w.reserve(n);
    for (int i = 0; i < n; ++i) {
        w.push_back(2);
        // Falling back to 0 is not always enough: a dyadic window ending here
        // can already be over budget from earlier 2s, so retract the latest
        // ones until the prefix is admissible again.
        while (!window_admissible(w)) {
            int j = static_cast<int>(w.size()) - 1;
            while (j >= 0 && w[j] != 2) --j;
            if (j < 0) break;
            w[j] = 0;
        }
    }
    return w;
}

std::vector<Point> CantorShift::sample(int depth) const {
    std::vector<Point> out;
    for (const auto& w : admissible_words(std::max(1, std::min(depth, 12)))) {
        Word rep(w, {0});
        // Words admissible with an all-zero tail stay admissible.
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<Point> CantorShift::essential_sample(int) const {
    return {Word::constant(0)};
}

// -------------------------------------------------------------------------
// Builders

SystemPtr build_subshift(int alphabet_size, std::vector<std::vector<int>> transitions) {
    return std::make_shared<Subshift>(alphabet_size, std::move(transitions));
}

SystemPtr build_piecewise_cover(std::vector<Branch> branches, bool circle, std::string name) {
    return std::make_shared<PiecewiseCover>(std::move(branches), circle, std::move(name));
}

SystemPtr build_square_fixture() { return std::make_shared<SquareFixture>(); }
SystemPtr build_ladder_fixture() { return std::make_shared<LadderFixture>(); }

SystemPtr build_finite_map(int nodes, std::vector<int> image) {
    return std::make_shared<FiniteMap>(nodes, std::move(image));
}

SystemPtr build_circle_rotation(double theta) {
    return std::make_shared<CircleRotation>(theta);
}

SystemPtr build_cantor_fixture() { return std::make_shared<CantorShift>(); }

SystemPtr build_doubling_map() {
    std::vector<Branch> br{
        {0.0, 0.5, Branch::Map::Affine, 2.0, 0.0},
        {0.5, 1.0, Branch::Map::Affine, 2.0, -1.0},
    };
    return build_piecewise_cover(std::move(br), true, "doubling");
}

SystemPtr build_tripling_map() {
    std::vector<Branch> br{
        {0.0, 1.0 / 3, Branch::Map::Affine, 3.0, 0.0},
        {1.0 / 3, 2.0 / 3, Branch::Map::Affine, 3.0, -1.0},
        {2.0 / 3, 1.0, Branch::Map::Affine, 3.0, -2.0},
    };
    return build_piecewise_cover(std::move(br), true, "tripling");
}

SystemPtr build_e11_map() {
    std::vector<Branch> br{
        {0.0, 0.5, Branch::Map::Affine, 2.0, 0.0},
        {0.5, 1.0, Branch::Map::Constant, 0.0, 1.0},
    };
    auto pc = std::make_shared<PiecewiseCover>(std::move(br), false, "e11");
    pc->declare_essential(Subset::finite_points({Point{0.0}, Point{1.0}}));
    return pc;
}

// -------------------------------------------------------------------------
// Shared operations

std::vector<Point> preimages(const SystemModel& S, const Point& x, int n,
                             bool within_restriction) {
    if (n < 1) throw std::invalid_argument("preimages: n must be >= 1");
    std::vector<Point> frontier{x};
    for (int k = 0; k < n; ++k) {
        std::vector<Point> next;
        for (const auto& p : frontier) {
            PreimageSet pre = S.preimage(p, within_restriction);
            if (!pre.discrete())
                throw NonDiscretePreimage(pre.intervals[0][0], pre.intervals[0][1]);
            for (const auto& q : pre.points) push_unique(next, q);
        }
        frontier = std::move(next);
    }
    return frontier;
}

double dn_distance(const SystemModel& S, const Point& x, const Point& y, int n) {
    double best = 0.0;
    Point a = x, b = y;
    for (int i = 0; i < n; ++i) {
        best = std::max(best, S.dist(a, b));
        if (i + 1 < n) {
            a = S.step(a);
            b = S.step(b);
        }
    }
    return best;
}

std::vector<Point> orbit(const SystemModel& S, const Point& x, int n) {
    std::vector<Point> out;
    Point p = x;
    for (int i = 0; i < n; ++i) {
        out.push_back(p);
        p = S.step(p);
    }
    return out;
}

} // namespace tfkit
