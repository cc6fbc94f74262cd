#pragma once

// Finite-group character tables and the product multiplicities they define.
// Tables arrive either as built-ins or as JSON; every table passes one
// validation pass (orthonormality, dimension sum rule, conjugation closure)
// before it is used. Multiplicities come from the standard inner-product
// formula and are checked to round cleanly to nonnegative integers.

#include <complex>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fusionkit/tensor.hpp"

namespace fusionkit {

constexpr double kTableTol = 1e-8;       // validation of a character table
constexpr double kGroupRoundTol = 1e-6;  // integrality of derived quantities

struct CharacterTable {
    std::string name;
    Int order = 0;
    std::vector<Int> class_sizes;  // class 0 is the identity class
    std::vector<Int> square_class; // empty when the power map is unknown
    std::vector<std::vector<std::complex<double>>> chars;  // chars[i][c]

    // Filled by finalize_table.
    std::vector<Int> dims;
    std::vector<Int> conj_irrep;

    std::size_t num_classes() const { return class_sizes.size(); }
    std::size_t num_irreps() const { return chars.size(); }
    bool has_power_map() const { return !square_class.empty(); }
};

namespace detail {

inline std::complex<double> char_inner(const CharacterTable& t, std::size_t i, std::size_t j) {
    std::complex<double> acc = 0;
    for (std::size_t c = 0; c < t.num_classes(); ++c)
        acc += static_cast<double>(t.class_sizes[c]) * t.chars[i][c] * std::conj(t.chars[j][c]);
    return acc / static_cast<double>(t.order);
}

} // namespace detail

// Validates the table and fills the derived fields. Throws load_error_t with
// a specific message on the first failure.
inline void finalize_table(CharacterTable& t) {
    auto fail = [&](const std::string& msg) { throw load_error_t("table " + t.name + ": " + msg); };
    if (t.name.empty()) throw load_error_t("table has no name");
    if (t.order < 1) fail("order must be positive");
    const std::size_t nc = t.num_classes();
    if (nc == 0) fail("no conjugacy classes");
    if (t.class_sizes[0] != 1) fail("first class must be the identity class");
    Int size_sum = 0;
    for (Int s : t.class_sizes) {
        if (s < 1) fail("class sizes must be positive");
        size_sum += s;
    }
    if (size_sum != t.order) fail("class sizes do not sum to order");
    if (t.num_irreps() != nc) fail("number of irreps must equal number of classes");
    for (const auto& row : t.chars)
        if (row.size() != nc) fail("character row length must equal number of classes");

    t.dims.assign(t.num_irreps(), 0);
    for (std::size_t i = 0; i < t.num_irreps(); ++i) {
        const auto v = t.chars[i][0];
        const double r = std::round(v.real());
        if (std::abs(v.imag()) > kTableTol || std::abs(v.real() - r) > kTableTol || r < 1)
            fail("dimensions must be positive integers");
        t.dims[i] = static_cast<Int>(r);
    }
    Int dim_sq = 0;
    for (Int d : t.dims) dim_sq += d * d;
    if (dim_sq != t.order) fail("sum of squared dimensions does not equal order");
    for (std::size_t c = 0; c < nc; ++c)
        if (std::abs(t.chars[0][c] - 1.0) > kTableTol) fail("first irrep is not the trivial character");
    for (std::size_t i = 0; i < t.num_irreps(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const auto ip = detail::char_inner(t, i, j);
            if (std::abs(ip - (i == j ? 1.0 : 0.0)) > kTableTol) fail("characters are not orthonormal");
        }

    t.conj_irrep.assign(t.num_irreps(), -1);
    for (std::size_t i = 0; i < t.num_irreps(); ++i) {
        for (std::size_t j = 0; j < t.num_irreps(); ++j) {
            double worst = 0;
            for (std::size_t c = 0; c < nc; ++c)
                worst = std::max(worst, std::abs(t.chars[j][c] - std::conj(t.chars[i][c])));
            if (worst <= kTableTol) {
                t.conj_irrep[i] = static_cast<Int>(j);
                break;
            }
        }
        if (t.conj_irrep[i] < 0) fail("characters are not closed under conjugation");
    }

    if (t.has_power_map()) {
        if (t.square_class.size() != nc) fail("power map length must equal number of classes");
        for (Int c : t.square_class)
            if (c < 0 || c >= static_cast<Int>(nc)) fail("power map entry out of range");
        if (t.square_class[0] != 0) fail("identity must square to itself");
    }
}

// Cyclic group of order n.
inline CharacterTable cyclic_table(Int n) {
    if (n < 1) throw domain_error_t("cyclic_table: order must be positive");
    if (n > 200) throw capacity_error_t("cyclic_table: order exceeds 200");
    CharacterTable t;
    t.name = "Z" + std::to_string(n);
    t.order = n;
    t.class_sizes.assign(static_cast<std::size_t>(n), 1);
    t.square_class.resize(static_cast<std::size_t>(n));
    for (Int c = 0; c < n; ++c) t.square_class[static_cast<std::size_t>(c)] = (2 * c) % n;
    t.chars.assign(static_cast<std::size_t>(n), std::vector<std::complex<double>>(static_cast<std::size_t>(n)));
    for (Int j = 0; j < n; ++j)
        for (Int c = 0; c < n; ++c) {
            const double angle = 2.0 * M_PI * static_cast<double>(j * c % n) / static_cast<double>(n);
            t.chars[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)] = {std::cos(angle), std::sin(angle)};
        }
    finalize_table(t);
    return t;
}

// Symmetric group on three letters; classes: identity, transpositions,
// 3-cycles.
inline CharacterTable s3_table() {
    CharacterTable t;
    t.name = "S3";
    t.order = 6;
    t.class_sizes = {1, 3, 2};
    t.square_class = {0, 0, 2};
    t.chars = {{1, 1, 1}, {1, -1, 1}, {2, 0, -1}};
    finalize_table(t);
    return t;
}

// Quaternion group; classes: 1, -1, {+-i}, {+-j}, {+-k}.
inline CharacterTable q8_table() {
    CharacterTable t;
    t.name = "Q8";
    t.order = 8;
    t.class_sizes = {1, 1, 2, 2, 2};
    t.square_class = {0, 0, 1, 1, 1};
    t.chars = {{1, 1, 1, 1, 1},
               {1, 1, 1, -1, -1},
               {1, 1, -1, 1, -1},
               {1, 1, -1, -1, 1},
               {2, -2, 0, 0, 0}};
    finalize_table(t);
    return t;
}

// Frobenius group of order 3m, the semidirect product of Z_m by Z_3 acting
// through a cube root of unity mod m; m must be a prime congruent to 1 mod 3.
// Classes: identity, the (m-1)/3 orbits {u, us, us^2} on <a> keyed by their
// smallest member, then the b and b^2 cosets. Irreps: three linears factoring
// through Z_3 and one 3-dimensional character per orbit, supported on <a>.
inline CharacterTable f3m_table(Int m) {
    if (m < 2) throw domain_error_t("f3m_table: m must be a prime congruent to 1 mod 3");
    if (m > 1000) throw capacity_error_t("f3m_table: m exceeds 1000");
    for (Int d = 2; d * d <= m; ++d)
        if (m % d == 0) throw domain_error_t("f3m_table: m must be prime");
    if (m % 3 != 1) throw domain_error_t("f3m_table: m must be congruent to 1 mod 3");
    Int s = 0;
    for (Int x = 2; x < m; ++x)
        if (x * x % m * x % m == 1) {
            s = x;
            break;
        }
    if (s == 0) throw integrity_error_t("f3m_table: no cube root of unity mod m");

    const Int norb = (m - 1) / 3;
    std::vector<Int> orbit_rep;                            // ascending smallest members
    std::vector<Int> cls_of_residue(static_cast<std::size_t>(m), -1);
    for (Int u = 1; u < m; ++u) {
        if (cls_of_residue[static_cast<std::size_t>(u)] >= 0) continue;
        const Int idx = 1 + static_cast<Int>(orbit_rep.size());
        orbit_rep.push_back(u);
        for (Int v = u; cls_of_residue[static_cast<std::size_t>(v)] < 0; v = v * s % m)
            cls_of_residue[static_cast<std::size_t>(v)] = idx;
    }
    if (static_cast<Int>(orbit_rep.size()) != norb)
        throw integrity_error_t("f3m_table: orbit count mismatch");

    CharacterTable t;
    t.name = "F" + std::to_string(3 * m);
    t.order = 3 * m;
    t.class_sizes.assign(static_cast<std::size_t>(norb) + 3, 3);
    t.class_sizes[0] = 1;
    t.class_sizes[static_cast<std::size_t>(norb) + 1] = m;
    t.class_sizes[static_cast<std::size_t>(norb) + 2] = m;
    t.square_class.assign(static_cast<std::size_t>(norb) + 3, 0);
    for (Int c = 0; c < norb; ++c)
        t.square_class[static_cast<std::size_t>(c) + 1] = cls_of_residue[static_cast<std::size_t>(2 * orbit_rep[static_cast<std::size_t>(c)] % m)];
    t.square_class[static_cast<std::size_t>(norb) + 1] = norb + 2;  // (a^u b)^2 lies in the b^2 coset
    t.square_class[static_cast<std::size_t>(norb) + 2] = norb + 1;

    const std::size_t nc = t.class_sizes.size();
    t.chars.assign(nc, std::vector<std::complex<double>>(nc, 0.0));
    for (Int j = 0; j < 3; ++j) {
        auto& row = t.chars[static_cast<std::size_t>(j)];
        for (std::size_t c = 0; c <= static_cast<std::size_t>(norb); ++c) row[c] = 1.0;
        for (Int p = 1; p <= 2; ++p) {
            const double angle = 2.0 * M_PI * static_cast<double>(j * p % 3) / 3.0;
            row[static_cast<std::size_t>(norb + p)] = {std::cos(angle), std::sin(angle)};
        }
    }
    for (Int c = 0; c < norb; ++c) {
        auto& row = t.chars[static_cast<std::size_t>(c) + 3];
        row[0] = 3.0;
        const Int tt = orbit_rep[static_cast<std::size_t>(c)];
        for (Int d = 0; d < norb; ++d) {
            const Int u = orbit_rep[static_cast<std::size_t>(d)];
            std::complex<double> acc = 0;
            for (Int p = u; ; p = p * s % m) {
                const double angle = 2.0 * M_PI * static_cast<double>(tt * p % m) / static_cast<double>(m);
                acc += std::complex<double>(std::cos(angle), std::sin(angle));
                if (p * s % m == u) break;
            }
            row[static_cast<std::size_t>(d) + 1] = acc;
        }
    }
    finalize_table(t);
    return t;
}

// Named built-ins: zN (any N), s3, q8, fK for K = 3m with m prime, 1 mod 3.
inline CharacterTable builtin_table(const std::string& name) {
    std::string low;
    for (char ch : name) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    auto numeric_suffix = [&](std::size_t from) -> Int {
        if (from >= low.size() || low.size() - from > 6) return -1;
        for (std::size_t i = from; i < low.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(low[i]))) return -1;
        return static_cast<Int>(std::stoll(low.substr(from)));
    };
    if (low == "s3") return s3_table();
    if (low == "q8") return q8_table();
    if (!low.empty() && low[0] == 'z') {
        const Int n = numeric_suffix(1);
        if (n >= 1) return cyclic_table(n);
    }
    if (!low.empty() && low[0] == 'f') {
        const Int k = numeric_suffix(1);
        if (k >= 3 && k % 3 == 0) return f3m_table(k / 3);
    }
    throw domain_error_t("unknown builtin table: " + name);
}

// JSON import. Accepts character values either as [re, im] pairs or as bare
// real numbers.
inline CharacterTable load_table_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw load_error_t(std::string("invalid table JSON: ") + e.what());
    }
    CharacterTable t;
    try {
        t.name = j.at("name").get<std::string>();
        t.order = j.at("order").get<Int>();
        const auto& classes = j.at("classes");
        bool any_square = false, all_square = true;
        for (const auto& c : classes) {
            t.class_sizes.push_back(c.at("size").get<Int>());
            if (c.contains("square_class")) {
                any_square = true;
                t.square_class.push_back(c.at("square_class").get<Int>());
            } else {
                all_square = false;
            }
        }
        if (any_square && !all_square) throw load_error_t("table " + t.name + ": partial power map");
        if (!any_square) t.square_class.clear();
        for (const auto& row : j.at("irreps")) {
            std::vector<std::complex<double>> r;
            for (const auto& v : row) {
                if (v.is_array()) {
                    if (v.size() != 2) throw load_error_t("table " + t.name + ": character entries must be [re, im]");
                    r.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
                } else {
                    r.emplace_back(v.get<double>(), 0.0);
                }
            }
            t.chars.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw load_error_t(std::string("invalid table JSON: ") + e.what());
    }
    finalize_table(t);
    return t;
}

inline CharacterTable load_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw load_error_t("cannot open table file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_table_json(buf.str());
}

namespace detail {

inline void check_irrep(const CharacterTable& t, Int i, const char* what) {
    if (i < 0 || i >= static_cast<Int>(t.num_irreps()))
        throw domain_error_t(std::string(what) + ": irrep index " + std::to_string(i) + " out of range for " + t.name);
}

} // namespace detail

// Decomposition of chi_i * chi_j; terms are keyed by one-label weights
// holding the irrep index.
inline Decomposition group_tensor(const CharacterTable& t, Int i, Int j) {
    detail::check_irrep(t, i, "group_tensor");
    detail::check_irrep(t, j, "group_tensor");
    Decomposition dec;
    dec.context = DecompositionContext{ContextKind::group, AlgebraId{}, 0, t.name};
    Int dim_sum = 0;
    for (std::size_t l = 0; l < t.num_irreps(); ++l) {
        std::complex<double> acc = 0;
        for (std::size_t c = 0; c < t.num_classes(); ++c)
            acc += static_cast<double>(t.class_sizes[c]) * t.chars[static_cast<std::size_t>(i)][c] *
                   t.chars[static_cast<std::size_t>(j)][c] * std::conj(t.chars[l][c]);
        acc /= static_cast<double>(t.order);
        const double rounded = std::round(acc.real());
        if (std::abs(acc.imag()) > kGroupRoundTol || std::abs(acc.real() - rounded) > kGroupRoundTol || rounded < 0)
            throw integrity_error_t("group_tensor: multiplicity is not a nonnegative integer");
        if (rounded > 0) {
            dec.terms.emplace(Weight{static_cast<Int>(l)}, static_cast<Int>(rounded));
            dim_sum += static_cast<Int>(rounded) * t.dims[l];
        }
    }
    if (dim_sum != t.dims[static_cast<std::size_t>(i)] * t.dims[static_cast<std::size_t>(j)])
        throw integrity_error_t("group_tensor: dimension sum rule failed");
    return dec;
}

inline Int group_conjugate(const CharacterTable& t, Int i) {
    detail::check_irrep(t, i, "group_conjugate");
    return t.conj_irrep[static_cast<std::size_t>(i)];
}

// Frobenius-Schur indicator from the power map: 1 real, 0 complex, -1
// quaternionic.
inline Int group_fs_indicator(const CharacterTable& t, Int i) {
    detail::check_irrep(t, i, "group_fs_indicator");
    if (!t.has_power_map())
        throw domain_error_t("group_fs_indicator: table " + t.name + " has no power map");
    std::complex<double> acc = 0;
    for (std::size_t c = 0; c < t.num_classes(); ++c)
        acc += static_cast<double>(t.class_sizes[c]) *
               t.chars[static_cast<std::size_t>(i)][static_cast<std::size_t>(t.square_class[c])];
    acc /= static_cast<double>(t.order);
    const double rounded = std::round(acc.real());
    if (std::abs(acc.imag()) > kGroupRoundTol || std::abs(acc.real() - rounded) > kGroupRoundTol ||
        std::abs(rounded) > 1)
        throw integrity_error_t("group_fs_indicator: value is not in {-1, 0, 1}");
    return static_cast<Int>(rounded);
}

// DOT graph of multiplication by chi_f across all irreps.
inline std::string group_graph(const CharacterTable& t, Int f) {
    detail::check_irrep(t, f, "group_graph");
    std::ostringstream out;
    out << "digraph tensor_graph {\n  rankdir=LR;\n";
    for (std::size_t i = 0; i < t.num_irreps(); ++i)
        out << "  \"" << format_weight({static_cast<Int>(i)}) << "\";\n";
    for (std::size_t i = 0; i < t.num_irreps(); ++i) {
        Decomposition d = group_tensor(t, f, static_cast<Int>(i));
        for (const auto& [w, m] : d.terms)
            out << "  \"" << format_weight({static_cast<Int>(i)}) << "\" -> \"" << format_weight(w)
                << "\" [label=" << m << "];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace fusionkit
