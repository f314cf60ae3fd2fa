#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace tfkit {

/// Exact eventually-periodic symbol sequence: head followed by an infinitely
/// repeated cycle. Orbits and preimages on shift spaces are computed on this
/// representation without rounding.
struct Word {
    std::vector<int> head;
    std::vector<int> cycle;  // nonempty

    Word() : cycle{0} {}
    Word(std::vector<int> h, std::vector<int> c);

    int at(std::size_t i) const;
    Word shifted() const;             // drop first symbol
    Word prepended(int symbol) const; // one-symbol extension

    /// First 1-based index at which the sequences disagree, 0 if equal.
    static std::size_t first_disagreement(const Word& a, const Word& b);

    bool operator==(const Word& other) const;
    bool operator<(const Word& other) const;

    std::string str(std::size_t prefix_len = 12) const;

    static Word constant(int symbol) { return Word({}, {symbol}); }
    static Word from_prefix(const std::vector<int>& prefix, int tail_symbol);

  private:
    void canonicalize();
};

/// Variant-matched point of a system model.
using Point = std::variant<int,                    // FiniteMap node
                           Word,                   // Subshift sequence
                           double,                 // interval / circle coordinate
                           std::array<double, 2>>; // planar fixtures

std::string point_str(const Point& p);
bool point_close(const Point& a, const Point& b, double tol = 1e-12);

} // namespace tfkit
