#include "tfkit/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tfkit {

std::string format_number(double v) {
    if (v == kNegInf) return "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v); // C locale via snprintf contract
    return buf;
}

std::string trace_csv(const EstimateTrace& t) {
    std::ostringstream os;
    os << "n,epsilon,log_value,rate,certified_upper_bound\n";
    for (std::size_t i = 0; i < t.depths().size(); ++i) {
        os << t.depths()[i] << ',' << format_number(t.eps()) << ','
           << format_number(t.logs()[i]) << ',' << format_number(t.rate(i)) << ','
           << (t.certified_upper_bound() ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string ladder_csv(const LadderEstimate& l) {
    std::ostringstream os;
    os << "n,epsilon,log_value,rate,certified_upper_bound\n";
    for (const auto& t : l.traces())
        for (std::size_t i = 0; i < t.depths().size(); ++i)
            os << t.depths()[i] << ',' << format_number(t.eps()) << ','
               << format_number(t.logs()[i]) << ',' << format_number(t.rate(i))
               << ',' << (t.certified_upper_bound() ? 1 : 0) << '\n';
    return os.str();
}

std::string identity_csv(const std::vector<IdentityRow>& rows) {
    auto field = [](std::string s) {
        for (char& c : s)
            if (c == ',' || c == '\n') c = ';';
        return s;
    };
    std::ostringstream os;
    os << "fixture,identity,psi,lhs,rhs,gap,tol,status,note\n";
    for (const auto& r : rows)
        os << field(r.fixture) << ',' << field(r.identity) << ',' << field(r.psi_name)
           << ',' << format_number(r.lhs) << ',' << format_number(r.rhs) << ','
           << format_number(r.gap) << ',' << format_number(r.tol) << ','
           << r.status << ',' << field(r.note) << '\n';
    return os.str();
}

std::string fingerprint(const nlohmann::json& j) {
    const std::string s = j.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

nlohmann::json report_bundle(const nlohmann::json& config,
                             const nlohmann::json& payload) {
    return {{"config", config}, {"fingerprint", fingerprint(config)},
            {"payload", payload}};
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
}

} // namespace tfkit
