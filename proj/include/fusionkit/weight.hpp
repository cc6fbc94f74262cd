#pragma once

#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fusionkit/errors.hpp"

namespace fusionkit {

using Int = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// A weight in the fundamental-weight basis (Dynkin labels).
using Weight = std::vector<Int>;

inline Int label_sum(const Weight& w) {
    return std::accumulate(w.begin(), w.end(), Int{0});
}

inline bool is_dominant(const Weight& w) {
    for (Int x : w)
        if (x < 0) return false;
    return true;
}

inline bool is_strictly_dominant(const Weight& w) {
    for (Int x : w)
        if (x <= 0) return false;
    return true;
}

inline Weight add(const Weight& a, const Weight& b) {
    Weight r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Weight sub(const Weight& a, const Weight& b) {
    Weight r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Weight negate(const Weight& a) {
    Weight r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

// Term order for decomposition output: label sum descending, then
// lexicographically descending. begin() of a map ordered this way is the
// graded-lex-highest weight.
struct TermOrderLess {
    bool operator()(const Weight& a, const Weight& b) const {
        Int sa = label_sum(a), sb = label_sum(b);
        if (sa != sb) return sa > sb;
        return a > b;
    }
};

// Alcove/vertex order: label sum ascending, then lexicographically descending.
struct AlcoveOrderLess {
    bool operator()(const Weight& a, const Weight& b) const {
        Int sa = label_sum(a), sb = label_sum(b);
        if (sa != sb) return sa < sb;
        return a > b;
    }
};

struct WeightHash {
    std::size_t operator()(const Weight& w) const {
        std::size_t h = 1469598103934665603ull;
        for (Int x : w) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

inline std::string format_weight(const Weight& w) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << ',';
        os << w[i];
    }
    os << ')';
    return os.str();
}

// Parses "1,2,0" (optionally wrapped in parentheses) into a Weight.
inline Weight parse_weight(const std::string& text) {
    std::string s = text;
    if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    Weight w;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &pos);
        } catch (const std::exception&) {
            throw domain_error_t("invalid weight component '" + tok + "'");
        }
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos != tok.size())
            throw domain_error_t("invalid weight component '" + tok + "'");
        w.push_back(v);
    }
    if (w.empty()) throw domain_error_t("empty weight '" + text + "'");
    return w;
}

} // namespace fusionkit
