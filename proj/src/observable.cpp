#include "tfkit/observable.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tfkit {

Observable Observable::constant(double c) {
    Observable o;
    o.kind_ = Kind::Constant;
    o.constant_ = c;
    o.name_ = std::to_string(c);
    return o;
}

Observable Observable::cylinder(int alphabet, int depth, std::vector<double> values,
                                std::string name) {
    std::size_t want = 1;
    for (int i = 0; i < depth; ++i) want *= alphabet;
    if (values.size() != want)
        throw std::invalid_argument("cylinder observable: table size mismatch");
    Observable o;
    o.kind_ = Kind::Cylinder;
    o.alphabet_ = alphabet;
    o.depth_ = depth;
    o.values_ = std::move(values);
    o.name_ = std::move(name);
    return o;
}

Observable Observable::fn1d(std::function<double(double)> f, std::string name) {
    Observable o;
    o.kind_ = Kind::Fn1D;
    o.f1_ = std::move(f);
    o.name_ = std::move(name);
    return o;
}

Observable Observable::fn2d(std::function<double(const std::array<double, 2>&)> f,
                            std::string name) {
    Observable o;
    o.kind_ = Kind::Fn2D;
    o.f2_ = std::move(f);
    o.name_ = std::move(name);
    return o;
}

Observable Observable::grid1d(std::vector<double> samples, double lo, double hi,
                              std::string name) {
    if (samples.size() < 2) throw std::invalid_argument("grid observable: too few samples");
    Observable o;
    o.kind_ = Kind::Grid1D;
    o.values_ = std::move(samples);
    o.lo_ = lo;
    o.hi_ = hi;
    o.name_ = std::move(name) + "@" + std::to_string(o.values_.size());
    return o;
}

Observable Observable::sampled1d(const std::function<double(double)>& f, double lo,
                                 double hi, int resolution, std::string name) {
    std::vector<double> samples(resolution + 1);
    for (int i = 0; i <= resolution; ++i)
        samples[i] = f(lo + (hi - lo) * i / resolution);
    return grid1d(std::move(samples), lo, hi, std::move(name));
}

double Observable::on_word(const std::vector<int>& w, std::size_t offset) const {
    if (kind_ == Kind::Constant) return constant_;
    if (kind_ != Kind::Cylinder)
        throw std::logic_error("on_word: not a cylinder observable");
    if (offset + depth_ > w.size())
        throw std::invalid_argument("on_word: word shorter than cylinder depth");
    std::size_t idx = 0;
    for (int i = 0; i < depth_; ++i) idx = idx * alphabet_ + w[offset + i];
    return values_[idx];
}

double Observable::operator()(const Point& p) const {
    switch (kind_) {
    case Kind::Constant:
        return constant_;
    case Kind::Cylinder: {
        if (std::holds_alternative<int>(p)) {
            if (depth_ != 1)
                throw std::logic_error("node observable requires depth-1 cylinder");
            return values_[std::get<int>(p)];
        }
        const Word& w = std::get<Word>(p);
        std::size_t idx = 0;
        for (int i = 0; i < depth_; ++i) {
            int s = w.at(i);
            if (s >= alphabet_) s = alphabet_ - 1; // Cantor symbols {0,2} fold to {0,1}
            idx = idx * alphabet_ + s;
        }
        return values_[idx];
    }
    case Kind::Fn1D:
        return f1_(std::get<double>(p));
    case Kind::Fn2D:
        return f2_(std::get<std::array<double, 2>>(p));
    case Kind::Grid1D: {
        const double x = std::clamp(std::get<double>(p), lo_, hi_);
        const double t = (x - lo_) / (hi_ - lo_) * (values_.size() - 1);
        const std::size_t i = std::min(static_cast<std::size_t>(t), values_.size() - 2);
        const double frac = t - i;
        return values_[i] * (1.0 - frac) + values_[i + 1] * frac;
    }
    }
    return 0.0;
}

double Observable::min_value_hint() const {
    switch (kind_) {
    case Kind::Constant:
        return constant_;
    case Kind::Cylinder:
    case Kind::Grid1D:
        return *std::min_element(values_.begin(), values_.end());
    default: {
        double m = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 256; ++i) {
            const double x = i / 256.0;
            m = std::min(m, kind_ == Kind::Fn1D
                                ? f1_(x)
                                : f2_({x, (i % 17) / 16.0}));
        }
        return m;
    }
    }
}

namespace {

// Both operands cylinder-locally-constant: combine exactly at the max depth.
Observable lift_pair(const Observable& a, const Observable& b,
                     double (*op)(double, double), const std::string& sym) {
    const int depth = std::max(a.cylinder_depth(), b.cylinder_depth());
    const int alphabet = std::max(a.alphabet(), b.alphabet());
    if (depth == 0)
        return Observable::constant(op(a.on_word({}), b.on_word({})));
    std::size_t count = 1;
    for (int i = 0; i < depth; ++i) count *= alphabet;
    std::vector<double> table(count);
    std::vector<int> w(depth, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t rem = idx;
        for (int i = depth - 1; i >= 0; --i) {
            w[i] = static_cast<int>(rem % alphabet);
            rem /= alphabet;
        }
        table[idx] = op(a.on_word(w), b.on_word(w));
    }
    return Observable::cylinder(alphabet, depth, std::move(table),
                                "(" + a.name() + sym + b.name() + ")");
}

} // namespace

Observable operator*(const Observable& a, const Observable& b) {
    if (a.is_cylinder() && b.is_cylinder())
        return lift_pair(a, b, [](double x, double y) { return x * y; }, "*");
    Observable o;
    if (a.obs_kind() == Observable::Kind::Fn2D || b.obs_kind() == Observable::Kind::Fn2D)
        o = Observable::fn2d(
            [a, b](const std::array<double, 2>& x) { return a(Point{x}) * b(Point{x}); },
            "(" + a.name() + "*" + b.name() + ")");
    else
        o = Observable::fn1d([a, b](double x) { return a(Point{x}) * b(Point{x}); },
                             "(" + a.name() + "*" + b.name() + ")");
    return o;
}

Observable operator+(const Observable& a, const Observable& b) {
    if (a.is_cylinder() && b.is_cylinder())
        return lift_pair(a, b, [](double x, double y) { return x + y; }, "+");
    Observable o;
    if (a.obs_kind() == Observable::Kind::Fn2D || b.obs_kind() == Observable::Kind::Fn2D)
        o = Observable::fn2d(
            [a, b](const std::array<double, 2>& x) { return a(Point{x}) + b(Point{x}); },
            "(" + a.name() + "+" + b.name() + ")");
    else
        o = Observable::fn1d([a, b](double x) { return a(Point{x}) + b(Point{x}); },
                             "(" + a.name() + "+" + b.name() + ")");
    return o;
}

Observable Observable::exp() const {
    switch (kind_) {
    case Kind::Constant:
        return constant(std::exp(constant_));
    case Kind::Cylinder: {
        auto t = values_;
        for (double& v : t) v = std::exp(v);
        return cylinder(alphabet_, depth_, std::move(t), "exp(" + name_ + ")");
    }
    case Kind::Grid1D: {
        auto t = values_;
        for (double& v : t) v = std::exp(v);
        return grid1d(std::move(t), lo_, hi_, "exp(" + name_ + ")");
    }
    case Kind::Fn1D: {
        auto f = f1_;
        return fn1d([f](double x) { return std::exp(f(x)); }, "exp(" + name_ + ")");
    }
    case Kind::Fn2D: {
        auto f = f2_;
        return fn2d([f](const std::array<double, 2>& x) { return std::exp(f(x)); },
                    "exp(" + name_ + ")");
    }
    }
    return *this;
}

Observable Observable::log() const {
    switch (kind_) {
    case Kind::Constant:
        return constant(std::log(constant_));
    case Kind::Cylinder: {
        auto t = values_;
        for (double& v : t) v = std::log(v);
        return cylinder(alphabet_, depth_, std::move(t), "log(" + name_ + ")");
    }
    case Kind::Grid1D: {
        auto t = values_;
        for (double& v : t) v = std::log(v);
        return grid1d(std::move(t), lo_, hi_, "log(" + name_ + ")");
    }
    case Kind::Fn1D: {
        auto f = f1_;
        return fn1d([f](double x) { return std::log(f(x)); }, "log(" + name_ + ")");
    }
    case Kind::Fn2D: {
        auto f = f2_;
        return fn2d([f](const std::array<double, 2>& x) { return std::log(f(x)); },
                    "log(" + name_ + ")");
    }
    }
    return *this;
}

Observable Observable::plus_const(double c) const { return *this + constant(c); }

} // namespace tfkit
