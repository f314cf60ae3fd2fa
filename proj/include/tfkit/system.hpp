#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfkit/point.hpp"

namespace tfkit {

class SystemModel;

/// One-step preimage enumeration result. Constant map pieces produce whole
/// intervals of preimages; those are kept symbolically instead of sampled.
struct PreimageSet {
    std::vector<Point> points;
    std::vector<std::array<double, 2>> intervals; // non-discrete branches
    bool discrete() const { return intervals.empty(); }
};

/// Thrown when a counting operation meets a non-discrete preimage branch.
class NonDiscretePreimage : public std::runtime_error {
  public:
    NonDiscretePreimage(double lo, double hi)
        : std::runtime_error("non-discrete preimage branch [" + std::to_string(lo) +
                             ", " + std::to_string(hi) + "]"),
          lo(lo), hi(hi) {}
    double lo, hi;
};

/// Closed subset descriptor: finite point list, sub-SFT transition family,
/// sub-interval union, or one of the named fixture subsets.
class Subset {
  public:
    enum class Kind {
        Whole,
        FinitePoints,
        SubSFT,         // admissibility matrix of a sub-shift
        IntervalUnion,
        SquareRows01,   // [0,1] x {0,1} of the square fixture
        SquareDelta,    // [0,1] x {0} U {(0,1)} of the square fixture
        LadderRight,    // [1/2,1] x Delta of the ladder fixture
    };

    static Subset whole();
    static Subset finite_points(std::vector<Point> pts);
    static Subset sub_sft(std::vector<std::vector<int>> transitions);
    static Subset interval_union(std::vector<std::array<double, 2>> ivs);
    static Subset named(Kind k);

    Kind kind() const { return kind_; }
    const std::vector<Point>& points() const { return points_; }
    const std::vector<std::vector<int>>& transitions() const { return transitions_; }
    const std::vector<std::array<double, 2>>& intervals() const { return intervals_; }

    bool contains(const SystemModel& S, const Point& p, double tol = 1e-9) const;

    /// Ordered 1D sample chains through the subset, for continuity scans.
    std::vector<std::vector<Point>> chains(const SystemModel& S, int resolution) const;

    std::string str() const;

  private:
    Kind kind_ = Kind::Whole;
    std::vector<Point> points_;
    std::vector<std::vector<int>> transitions_;
    std::vector<std::array<double, 2>> intervals_;
};

class Subshift; // fwd

/// A dynamical system from the supported zoo: total forward map, metric, and
/// exact inverse-branch enumeration where declared.
class SystemModel {
  public:
    enum class Kind {
        FiniteMap,
        Subshift,
        PiecewiseCover,
        SquareFixture,
        LadderFixture,
        CircleRotation,
        CantorShift,
    };

    virtual ~SystemModel() = default;

    virtual Kind kind() const = 0;
    virtual std::string name() const = 0;
    virtual Point step(const Point& x) const = 0;
    virtual double dist(const Point& x, const Point& y) const = 0;

    /// Exact one-step preimages; within_essential intersects with the
    /// declared essential set (the alpha-tilde inverse).
    virtual PreimageSet preimage(const Point& x, bool within_essential = false) const = 0;

    /// Finite-sheeted bound: sup over x of the number of one-step preimages.
    virtual int sheet_bound() const = 0;

    virtual double diameter() const = 0;

    /// Finite sample standing proxy for the whole space at the given
    /// resolution (grid points or cylinder depth).
    virtual std::vector<Point> sample(int resolution) const = 0;

    /// Sample proxy for the declared essential set X_alpha.
    virtual std::vector<Point> essential_sample(int resolution) const {
        return sample(resolution);
    }

    /// Membership in the declared essential set, where the fixture records it.
    virtual bool in_essential(const Point&) const { return true; }

    const Subshift* as_subshift() const;
};

using SystemPtr = std::shared_ptr<const SystemModel>;

// -------------------------------------------------------------------------
// Model zoo

class Subshift : public SystemModel {
  public:
    Subshift(int alphabet, std::vector<std::vector<int>> transitions);

    Kind kind() const override { return Kind::Subshift; }
    std::string name() const override;
    Point step(const Point& x) const override;
    double dist(const Point& x, const Point& y) const override;
    PreimageSet preimage(const Point& x, bool within_essential) const override;
    int sheet_bound() const override;
    double diameter() const override { return 0.5; }
    std::vector<Point> sample(int depth) const override;

    int alphabet() const { return alphabet_; }
    const std::vector<std::vector<int>>& transitions() const { return transitions_; }

    bool admissible(const std::vector<int>& w) const;
    bool contains(const Word& w) const;
    std::vector<std::vector<int>> admissible_words(int n) const;
    /// One representative point per admissible depth-n cylinder.
    std::vector<Point> cylinder_reps(int n) const;
    /// Extend an admissible word to an eventually-periodic point of the shift.
    Word rep_of(const std::vector<int>& w) const;

  private:
    int alphabet_;
    std::vector<std::vector<int>> transitions_;
};

struct Branch {
    enum class Map { Affine, Constant, Square };
    double lo, hi;
    Map map;
    double slope = 1.0, offset = 0.0; // Affine: slope*x+offset, Constant: offset

    double apply(double x) const;
};

class PiecewiseCover : public SystemModel {
  public:
    PiecewiseCover(std::vector<Branch> branches, bool circle, std::string name);

    Kind kind() const override { return Kind::PiecewiseCover; }
    std::string name() const override { return name_; }
    Point step(const Point& x) const override;
    double dist(const Point& x, const Point& y) const override;
    PreimageSet preimage(const Point& x, bool within_essential) const override;
    int sheet_bound() const override { return static_cast<int>(branches_.size()); }
    double diameter() const override;
    std::vector<Point> sample(int resolution) const override;
    std::vector<Point> essential_sample(int resolution) const override;
    bool in_essential(const Point& p) const override;

    const std::vector<Branch>& branches() const { return branches_; }
    bool circle() const { return circle_; }
    const Branch& branch_of(double x) const;

    /// Declares the (externally known) essential set of the fixture.
    void declare_essential(Subset s) { essential_ = std::move(s); }
    const std::optional<Subset>& declared_essential() const { return essential_; }

    double domain_lo() const { return lo_; }
    double domain_hi() const { return hi_; }

  private:
    std::vector<Branch> branches_;
    bool circle_;
    std::string name_;
    double lo_, hi_;
    std::optional<Subset> essential_;
};

class CircleRotation : public SystemModel {
  public:
    explicit CircleRotation(double theta) : theta_(theta) {}

    Kind kind() const override { return Kind::CircleRotation; }
    std::string name() const override { return "rotation"; }
    Point step(const Point& x) const override;
    double dist(const Point& x, const Point& y) const override;
    PreimageSet preimage(const Point& x, bool within_essential) const override;
    int sheet_bound() const override { return 1; }
    double diameter() const override { return 0.5; }
    std::vector<Point> sample(int resolution) const override;

    double theta() const { return theta_; }

  private:
    double theta_;
};

class FiniteMap : public SystemModel {
  public:
    FiniteMap(int nodes, std::vector<int> image);

    Kind kind() const override { return Kind::FiniteMap; }
    std::string name() const override { return "finite_map"; }
    Point step(const Point& x) const override;
    double dist(const Point& x, const Point& y) const override;
    PreimageSet preimage(const Point& x, bool within_essential) const override;
    int sheet_bound() const override;
    double diameter() const override { return 1.0; }
    std::vector<Point> sample(int) const override;
    std::vector<Point> essential_sample(int) const override;
    bool in_essential(const Point& p) const override;

    int nodes() const { return nodes_; }
    int image_of(int v) const { return image_[v]; }
    /// Nodes lying on a cycle of the functional graph.
    const std::vector<int>& periodic_nodes() const { return periodic_; }

  private:
    int nodes_;
    std::vector<int> image_;
    std::vector<int> periodic_;
};

/// The square [0,1]^2 with the two-triangle map and the composition-operator
/// inner map beta(x1,x2) = (x1, x2^2(2-x1)/2).
class SquareFixture : public SystemModel {
  public:
    Kind kind() const override { return Kind::SquareFixture; }
    std::string name() const override { return "square"; }
    Point step(const Point& x) const override;
    double dist(const Point& x, const Point& y) const override;
    PreimageSet preimage(const Point& x, bool within_essential) const override;
    int sheet_bound() const override { return 2; }
    double diameter() const override { return 1.0; }
    std::vector<Point> sample(int resolution) const override;
    std::vector<Point> essential_sample(int resolution) const override;
    bool in_essential(const Point& p) const override;

    static std::array<double, 2> beta(const std::array<double, 2>& x);
    static bool in_delta2(const std::array<double, 2>& x) {
        return x[1] > (2.0 - x[0]) / 2.0;
    }
};

/// [0,1] x Delta ladder, Delta = {0} U {1/2^n}.
class LadderFixture : public SystemModel {
  public:
    Kind kind() const override { return Kind::LadderFixture; }
    std::string name() const override { return "ladder"; }
    Point step(const Point& x) const override;
    double dist(const Point& x, const Point& y) const override;
    PreimageSet preimage(const Point& x, bool within_essential) const override;
    int sheet_bound() const override { return 2; }
    double diameter() const override { return std::sqrt(2.0); }
    std::vector<Point> sample(int resolution) const override;
    std::vector<Point> essential_sample(int resolution) const override;
    bool in_essential(const Point& p) const override;

    static int level_of(double y); // -1 for y == 0, else n with y = 1/2^n
};

/// Cantor-set sub-system of the one-third-Cantor shift: sequences over {0,2}
/// in which every window of length 2^n carries at most n twos.
class CantorShift : public SystemModel {
  public:
    Kind kind() const override { return Kind::CantorShift; }
    std::string name() const override { return "cantor"; }
    Point step(const Point& x) const override;
    double dist(const Point& x, const Point& y) const override;
    PreimageSet preimage(const Point& x, bool within_essential) const override;
    int sheet_bound() const override { return 2; }
    double diameter() const override { return 0.5; }
    std::vector<Point> sample(int depth) const override;
    std::vector<Point> essential_sample(int) const override;
    bool in_essential(const Point& p) const override;

    static bool window_admissible(const std::vector<int>& w);
    std::vector<std::vector<int>> admissible_words(int n) const;
    /// Greedy densest admissible sequence (maximal twos packing), length n.
    static std::vector<int> densest_sequence(int n);
};

// -------------------------------------------------------------------------
// Constructors and shared operations

SystemPtr build_subshift(int alphabet_size, std::vector<std::vector<int>> transitions);
SystemPtr build_piecewise_cover(std::vector<Branch> branches, bool circle = false,
                                std::string name = "piecewise");
SystemPtr build_square_fixture();
SystemPtr build_ladder_fixture();
SystemPtr build_finite_map(int nodes, std::vector<int> image);
SystemPtr build_circle_rotation(double theta);
SystemPtr build_cantor_fixture();

// Standard fixtures assembled from the above.
SystemPtr build_doubling_map();
SystemPtr build_tripling_map();
SystemPtr build_e11_map(); // 2x on [0,1/2], constant 1 on [1/2,1]

/// Exact n-th preimage set (deduplicated branch-composition tree). Throws
/// NonDiscretePreimage if a constant branch is met.
std::vector<Point> preimages(const SystemModel& S, const Point& x, int n,
                             bool within_restriction = false);

/// d_n(x,y) = max_{i<n} d(alpha^i x, alpha^i y).
double dn_distance(const SystemModel& S, const Point& x, const Point& y, int n);

/// (x, alpha x, ..., alpha^{n-1} x).
std::vector<Point> orbit(const SystemModel& S, const Point& x, int n);

} // namespace tfkit
