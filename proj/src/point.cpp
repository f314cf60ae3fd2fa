#include "tfkit/point.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tfkit {

Word::Word(std::vector<int> h, std::vector<int> c)
    : head(std::move(h)), cycle(std::move(c)) {
    if (cycle.empty()) throw std::invalid_argument("Word: empty cycle");
    canonicalize();
}

void Word::canonicalize() {
    // Reduce the cycle to its primitive period.
    for (std::size_t p = 1; p <= cycle.size() / 2; ++p) {
        if (cycle.size() % p != 0) continue;
        bool periodic = true;
        for (std::size_t i = p; i < cycle.size(); ++i)
            if (cycle[i] != cycle[i - p]) { periodic = false; break; }
        if (periodic) { cycle.resize(p); break; }
    }
    // Absorb head symbols that already follow the cycle pattern.
    while (!head.empty() && head.back() == cycle.back()) {
        head.pop_back();
        std::rotate(cycle.begin(), cycle.end() - 1, cycle.end());
    }
}

int Word::at(std::size_t i) const {
    if (i < head.size()) return head[i];
    return cycle[(i - head.size()) % cycle.size()];
}

Word Word::shifted() const {
    Word w = *this;
    if (!w.head.empty()) {
        w.head.erase(w.head.begin());
        w.canonicalize();
    } else {
        std::rotate(w.cycle.begin(), w.cycle.begin() + 1, w.cycle.end());
    }
    return w;
}

Word Word::prepended(int symbol) const {
    Word w = *this;
    w.head.insert(w.head.begin(), symbol);
    w.canonicalize();
    return w;
}

std::size_t Word::first_disagreement(const Word& a, const Word& b) {
    const std::size_t bound = std::max(a.head.size(), b.head.size()) +
                             std::lcm(a.cycle.size(), b.cycle.size());
    for (std::size_t i = 0; i < bound; ++i)
        if (a.at(i) != b.at(i)) return i + 1;
    return 0;
}

bool Word::operator==(const Word& other) const {
    return head == other.head && cycle == other.cycle;
}

bool Word::operator<(const Word& other) const {
    if (head != other.head) return head < other.head;
    return cycle < other.cycle;
}

std::string Word::str(std::size_t prefix_len) const {
    std::ostringstream os;
    for (std::size_t i = 0; i < prefix_len; ++i) os << at(i);
    os << "...";
    return os.str();
}

Word Word::from_prefix(const std::vector<int>& prefix, int tail_symbol) {
    return Word(prefix, {tail_symbol});
}

std::string point_str(const Point& p) {
    std::ostringstream os;
    if (std::holds_alternative<int>(p)) {
        os << "node(" << std::get<int>(p) << ")";
    } else if (std::holds_alternative<Word>(p)) {
        os << std::get<Word>(p).str();
    } else if (std::holds_alternative<double>(p)) {
        os << std::get<double>(p);
    } else {
        const auto& xy = std::get<std::array<double, 2>>(p);
        os << "(" << xy[0] << ", " << xy[1] << ")";
    }
    return os.str();
}

bool point_close(const Point& a, const Point& b, double tol) {
    if (a.index() != b.index()) return false;
    if (std::holds_alternative<int>(a)) return std::get<int>(a) == std::get<int>(b);
    if (std::holds_alternative<Word>(a)) return std::get<Word>(a) == std::get<Word>(b);
    if (std::holds_alternative<double>(a))
        return std::fabs(std::get<double>(a) - std::get<double>(b)) <= tol;
    const auto& u = std::get<std::array<double, 2>>(a);
    const auto& v = std::get<std::array<double, 2>>(b);
    return std::fabs(u[0] - v[0]) <= tol && std::fabs(u[1] - v[1]) <= tol;
}

} // namespace tfkit
