#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tfkit/point.hpp"

namespace tfkit {

/// Real function representation: cylinder-locally-constant on shift and node
/// spaces, closed-form or grid-sampled with linear interpolation on metric
/// models.
class Observable {
  public:
    enum class Kind { Constant, Cylinder, Fn1D, Fn2D, Grid1D };

    Observable() : kind_(Kind::Constant), constant_(0.0), name_("0") {}

    static Observable constant(double c);
    /// Depth-k cylinder table over alphabet^k, row-major in symbols.
    static Observable cylinder(int alphabet, int depth, std::vector<double> values,
                               std::string name = "cyl");
    static Observable fn1d(std::function<double(double)> f, std::string name);
    static Observable fn2d(std::function<double(const std::array<double, 2>&)> f,
                           std::string name);
    /// Uniform samples on [lo,hi] with linear interpolation; the resolution is
    /// part of the representation and lands in reports.
    static Observable grid1d(std::vector<double> samples, double lo, double hi,
                             std::string name = "grid");
    /// Sample a closed form onto a grid at the declared resolution.
    static Observable sampled1d(const std::function<double(double)>& f, double lo,
                                double hi, int resolution, std::string name);

    double operator()(const Point& p) const;

    Kind obs_kind() const { return kind_; }
    bool is_cylinder() const { return kind_ == Kind::Cylinder || kind_ == Kind::Constant; }
    int cylinder_depth() const { return kind_ == Kind::Constant ? 0 : depth_; }
    int alphabet() const { return alphabet_; }
    const std::vector<double>& table() const { return values_; }
    const std::string& name() const { return name_; }

    double min_value_hint() const; // exact for tables, sampled otherwise

    /// Pointwise combinators; cylinder algebra is kept exact.
    friend Observable operator*(const Observable& a, const Observable& b);
    friend Observable operator+(const Observable& a, const Observable& b);
    Observable exp() const;
    Observable log() const;
    Observable plus_const(double c) const;

    /// Value on a cylinder word (first depth() symbols given explicitly).
    double on_word(const std::vector<int>& w, std::size_t offset = 0) const;

  private:
    Kind kind_;
    double constant_ = 0.0;
    int alphabet_ = 0, depth_ = 0;
    std::vector<double> values_;
    double lo_ = 0.0, hi_ = 1.0;
    std::function<double(double)> f1_;
    std::function<double(const std::array<double, 2>&)> f2_;
    std::string name_;
};

} // namespace tfkit
