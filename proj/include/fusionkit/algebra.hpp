#pragma once

// Root-system core for the simple Lie algebras A-G.
//
// Conventions: weights are stored as Dynkin labels w_i = <w, alpha_i^vee>.
// The Cartan matrix is stored as cartan[i][j] = <alpha_j, alpha_i^vee>, so
// column j holds the Dynkin labels of the simple root alpha_j. The invariant
// form is normalized so long roots have squared length 2.

#include <algorithm>
#include <cassert>
#include <cctype>
#include <deque>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fusionkit/errors.hpp"
#include "fusionkit/weight.hpp"

namespace fusionkit {

struct AlgebraId {
    char series = 'A';
    int rank = 1;

    std::string name() const { return std::string(1, series) + std::to_string(rank); }

    bool operator==(const AlgebraId& o) const { return series == o.series && rank == o.rank; }
    bool operator!=(const AlgebraId& o) const { return !(*this == o); }
    bool operator<(const AlgebraId& o) const {
        return series != o.series ? series < o.series : rank < o.rank;
    }
};

// Parses names like "A2", "E6", "G2". Rank bounds: A>=1, B>=2, C>=2, D>=3,
// E in {6,7,8}, F=4, G=2.
inline AlgebraId parse_algebra(const std::string& text) {
    if (text.size() < 2)
        throw domain_error_t("invalid algebra name '" + text + "'");
    char s = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    for (std::size_t i = 1; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw domain_error_t("invalid algebra name '" + text + "'");
    int r = 0;
    try {
        r = std::stoi(text.substr(1));
    } catch (const std::exception&) {
        throw domain_error_t("invalid algebra rank in '" + text + "'");
    }
    bool ok = false;
    switch (s) {
        case 'A': ok = r >= 1; break;
        case 'B': ok = r >= 2; break;
        case 'C': ok = r >= 2; break;
        case 'D': ok = r >= 3; break;
        case 'E': ok = r >= 6 && r <= 8; break;
        case 'F': ok = r == 4; break;
        case 'G': ok = r == 2; break;
        default: ok = false;
    }
    if (!ok || r > 16)
        throw domain_error_t("unsupported algebra '" + text + "'");
    return AlgebraId{s, r};
}

struct ReflectionOutcome {
    Weight result;
    int sign = 1;
    bool on_wall = false;
};

struct PositiveRoot {
    Weight labels;            // Dynkin labels of the root
    std::vector<Int> coroot;  // alpha^vee in the basis alpha_i^vee
    Int height = 0;           // sum of simple-root coefficients
};

struct RootData {
    AlgebraId id;
    int rank = 0;
    std::vector<std::vector<Int>> cartan;                  // cartan[i][j] = <alpha_j, alpha_i^vee>
    std::vector<Rational> symmetrizer;                     // d_i = (alpha_i, alpha_i)/2
    std::vector<std::vector<std::pair<int, Int>>> refl;    // refl[i]: nonzero (j, cartan[j][i])
    std::vector<std::vector<Rational>> inverse_cartan;     // C^-1, entrywise nonnegative
    std::vector<std::vector<Rational>> form;               // F with (v,w) = v^T F w
    std::vector<std::vector<Int>> form_scaled;             // form_scale * F, integral
    Int form_scale = 1;
    std::vector<PositiveRoot> positive;
    Weight theta;                                          // highest root
    std::vector<Int> comarks;                              // theta^vee coefficients
    Int dual_coxeter = 0;                                  // 1 + <rho, theta^vee>
    std::vector<Int> two_rho_coroot;                       // functional <v, 2 rho^vee>
    BigInt weyl_order;

    Weight rho() const { return Weight(static_cast<std::size_t>(rank), 1); }
};

namespace detail {

inline std::vector<std::vector<Rational>> invert_rational(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) throw integrity_error_t("singular Cartan matrix");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Rational p = m[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col] == 0) continue;
            Rational f = m[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[row][j] -= f * m[col][j];
                inv[row][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

inline BigInt factorial(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline std::size_t expected_positive_count(const AlgebraId& id) {
    const std::size_t r = static_cast<std::size_t>(id.rank);
    switch (id.series) {
        case 'A': return r * (r + 1) / 2;
        case 'B':
        case 'C': return r * r;
        case 'D': return r * (r - 1);
        case 'E': return id.rank == 6 ? 36u : (id.rank == 7 ? 63u : 120u);
        case 'F': return 24u;
        case 'G': return 6u;
    }
    return 0;
}

inline BigInt expected_weyl_order(const AlgebraId& id) {
    const int r = id.rank;
    switch (id.series) {
        case 'A': return factorial(r + 1);
        case 'B':
        case 'C': return factorial(r) << r;
        case 'D': return factorial(r) << (r - 1);
        case 'E':
            if (r == 6) return 51840;
            if (r == 7) return 2903040;
            return 696729600;
        case 'F': return 1152;
        case 'G': return 12;
    }
    return 1;
}

} // namespace detail

inline RootData build_algebra(const AlgebraId& id) {
    // Re-validate so RootData can only exist for a supported algebra.
    parse_algebra(id.name());
    const int r = id.rank;
    RootData rd;
    rd.id = id;
    rd.rank = r;

    std::vector<std::pair<int, int>> edges;          // symmetric -1 unless overridden
    std::vector<std::pair<int, int>> double_bonds;   // (i, j) meaning cartan[i][j] = -2
    rd.symmetrizer.assign(static_cast<std::size_t>(r), Rational(1));

    auto chain = [&](int upto) {
        for (int i = 0; i + 1 < upto; ++i) edges.emplace_back(i, i + 1);
    };
    switch (id.series) {
        case 'A':
            chain(r);
            break;
        case 'B':
            chain(r);
            double_bonds.emplace_back(r - 1, r - 2);
            rd.symmetrizer[static_cast<std::size_t>(r - 1)] = Rational(1, 2);
            break;
        case 'C':
            chain(r);
            double_bonds.emplace_back(r - 2, r - 1);
            for (int i = 0; i + 1 < r; ++i) rd.symmetrizer[static_cast<std::size_t>(i)] = Rational(1, 2);
            break;
        case 'D':
            chain(r - 2);
            edges.emplace_back(r - 3, r - 2);
            edges.emplace_back(r - 3, r - 1);
            break;
        case 'E':
            // Nodes 0..4 form the long chain, node 5 hangs off node 2 for E6;
            // E7/E8 extend the chain and keep the branch at the third node.
            if (r == 6) {
                edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}};
            } else if (r == 7) {
                edges = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {1, 3}};
            } else {
                edges = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
            }
            break;
        case 'F':
            chain(4);
            double_bonds.emplace_back(2, 1);
            rd.symmetrizer[2] = Rational(1, 2);
            rd.symmetrizer[3] = Rational(1, 2);
            break;
        case 'G':
            edges = {{0, 1}};
            rd.symmetrizer[0] = Rational(1, 3);
            break;
    }

    rd.cartan.assign(static_cast<std::size_t>(r), std::vector<Int>(static_cast<std::size_t>(r), 0));
    for (int i = 0; i < r; ++i) rd.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
    for (auto [i, j] : edges) {
        rd.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = -1;
        rd.cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -1;
    }
    for (auto [i, j] : double_bonds) rd.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = -2;
    if (id.series == 'G') {
        rd.cartan[0][1] = -3;  // <alpha_2, alpha_1^vee> for the short root alpha_1
        rd.cartan[1][0] = -1;
    }

    // Symmetrizability check: d_i c_ij = d_j c_ji.
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (rd.symmetrizer[static_cast<std::size_t>(i)] * rd.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
                rd.symmetrizer[static_cast<std::size_t>(j)] * rd.cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
                throw integrity_error_t("Cartan symmetrizer mismatch for " + id.name());

    rd.refl.assign(static_cast<std::size_t>(r), {});
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (rd.cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] != 0)
                rd.refl[static_cast<std::size_t>(i)].emplace_back(j, rd.cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);

    // Quadratic form F_ij = d_j (C^-1)_ji.
    std::vector<std::vector<Rational>> cr(static_cast<std::size_t>(r), std::vector<Rational>(static_cast<std::size_t>(r)));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) cr[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = rd.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    auto cinv = detail::invert_rational(cr);
    rd.inverse_cartan = cinv;
    rd.form.assign(static_cast<std::size_t>(r), std::vector<Rational>(static_cast<std::size_t>(r)));
    BigInt scale = 1;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            rd.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                rd.symmetrizer[static_cast<std::size_t>(j)] * cinv[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            BigInt den = denominator(rd.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            scale = boost::multiprecision::lcm(scale, den);
        }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < i; ++j)
            if (rd.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != rd.form[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
                throw integrity_error_t("quadratic form asymmetry for " + id.name());
    rd.form_scale = static_cast<Int>(scale);
    rd.form_scaled.assign(static_cast<std::size_t>(r), std::vector<Int>(static_cast<std::size_t>(r)));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            Rational v = rd.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * rd.form_scale;
            if (denominator(v) != 1) throw integrity_error_t("form scaling failed for " + id.name());
            rd.form_scaled[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = static_cast<Int>(numerator(v));
        }

    // Roots: closure of the simple roots under simple reflections, tracked as
    // (labels, simple-root coordinates).
    struct RootRec {
        Weight labels;
        std::vector<Int> coords;
    };
    std::map<Weight, std::vector<Int>> seen;
    std::deque<RootRec> queue;
    for (int i = 0; i < r; ++i) {
        RootRec rec;
        rec.labels.assign(static_cast<std::size_t>(r), 0);
        for (int j = 0; j < r; ++j) rec.labels[static_cast<std::size_t>(j)] = rd.cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        rec.coords.assign(static_cast<std::size_t>(r), 0);
        rec.coords[static_cast<std::size_t>(i)] = 1;
        if (seen.emplace(rec.labels, rec.coords).second) queue.push_back(rec);
    }
    while (!queue.empty()) {
        RootRec cur = queue.front();
        queue.pop_front();
        for (int i = 0; i < r; ++i) {
            RootRec nxt = cur;
            Int c = cur.labels[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            for (auto [j, coef] : rd.refl[static_cast<std::size_t>(i)]) nxt.labels[static_cast<std::size_t>(j)] -= c * coef;
            nxt.coords[static_cast<std::size_t>(i)] -= c;
            if (seen.emplace(nxt.labels, nxt.coords).second) queue.push_back(nxt);
        }
    }

    for (const auto& [labels, coords] : seen) {
        bool pos = true, neg = true;
        for (Int c : coords) {
            if (c < 0) pos = false;
            if (c > 0) neg = false;
        }
        if (pos == neg) throw integrity_error_t("root with mixed coordinates for " + id.name());
        if (!pos) continue;
        PositiveRoot pr;
        pr.labels = labels;
        pr.height = 0;
        for (Int c : coords) pr.height += c;
        // d_alpha = (alpha, alpha)/2 via the form; coroot coefficients are
        // k_i * d_i / d_alpha and must be integers.
        Rational norm2 = 0;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                norm2 += rd.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * labels[static_cast<std::size_t>(i)] * labels[static_cast<std::size_t>(j)];
        Rational dalpha = norm2 / 2;
        pr.coroot.assign(static_cast<std::size_t>(r), 0);
        for (int i = 0; i < r; ++i) {
            Rational k = Rational(coords[static_cast<std::size_t>(i)]) * rd.symmetrizer[static_cast<std::size_t>(i)] / dalpha;
            if (denominator(k) != 1) throw integrity_error_t("non-integral coroot coefficient for " + id.name());
            pr.coroot[static_cast<std::size_t>(i)] = static_cast<Int>(numerator(k));
        }
        rd.positive.push_back(std::move(pr));
    }
    std::sort(rd.positive.begin(), rd.positive.end(), [](const PositiveRoot& a, const PositiveRoot& b) {
        if (a.height != b.height) return a.height < b.height;
        return a.labels < b.labels;
    });
    if (rd.positive.size() != detail::expected_positive_count(id))
        throw integrity_error_t("positive root count mismatch for " + id.name());

    const PositiveRoot& top = rd.positive.back();
    if (rd.positive.size() >= 2 && rd.positive[rd.positive.size() - 2].height == top.height)
        throw integrity_error_t("highest root not unique for " + id.name());
    rd.theta = top.labels;
    rd.comarks = top.coroot;
    rd.dual_coxeter = 1;
    for (Int c : rd.comarks) rd.dual_coxeter += c;

    rd.two_rho_coroot.assign(static_cast<std::size_t>(r), 0);
    for (const auto& pr : rd.positive)
        for (int j = 0; j < r; ++j) rd.two_rho_coroot[static_cast<std::size_t>(j)] += pr.coroot[static_cast<std::size_t>(j)];

    rd.weyl_order = detail::expected_weyl_order(id);

    // Normalization check: (theta, theta) = 2.
    Rational tn = 0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            tn += rd.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * rd.theta[static_cast<std::size_t>(i)] * rd.theta[static_cast<std::size_t>(j)];
    if (tn != 2) throw integrity_error_t("highest root norm is not 2 for " + id.name());

    return rd;
}

inline void check_rank(const RootData& rd, const Weight& w, const char* what) {
    if (static_cast<int>(w.size()) != rd.rank)
        throw domain_error_t(std::string(what) + ": weight " + format_weight(w) + " has wrong rank for " + rd.id.name());
}

// lambda bar = -w0(lambda): series A reverses labels, D with odd rank swaps
// the two spinor labels, E6 reverses the five chain labels. Everything else
// is self-conjugate.
inline Weight conjugate_weight(const RootData& rd, const Weight& w) {
    check_rank(rd, w, "conjugate_weight");
    Weight out = w;
    if (rd.id.series == 'A') {
        std::reverse(out.begin(), out.end());
    } else if (rd.id.series == 'D' && rd.rank % 2 == 1) {
        std::swap(out[static_cast<std::size_t>(rd.rank - 2)], out[static_cast<std::size_t>(rd.rank - 1)]);
    } else if (rd.id.series == 'E' && rd.rank == 6) {
        std::reverse(out.begin(), out.begin() + 5);
    }
    return out;
}

inline bool is_self_conjugate(const RootData& rd, const Weight& w) {
    return conjugate_weight(rd, w) == w;
}

// Applies s_i in place and returns the label that was reflected away.
inline void apply_simple_reflection(const RootData& rd, int i, Weight& w) {
    const Int c = w[static_cast<std::size_t>(i)];
    if (c == 0) return;
    for (auto [j, coef] : rd.refl[static_cast<std::size_t>(i)]) w[static_cast<std::size_t>(j)] -= c * coef;
}

// Reflects w into the dominant chamber, tracking the sign of the Weyl element
// used. If any intermediate vector has a zero label the orbit lies on a wall:
// on_wall is set and result/sign are the state at detection.
inline ReflectionOutcome reflect_to_dominant(const RootData& rd, Weight w) {
    check_rank(rd, w, "reflect_to_dominant");
    int sign = 1;
    for (;;) {
        int neg = -1;
        for (int i = 0; i < rd.rank; ++i) {
            Int x = w[static_cast<std::size_t>(i)];
            if (x == 0) return ReflectionOutcome{std::move(w), sign, true};
            if (x < 0 && neg < 0) neg = i;
        }
        if (neg < 0) return ReflectionOutcome{std::move(w), sign, false};
        apply_simple_reflection(rd, neg, w);
        sign = -sign;
    }
}

// Dominant representative of the orbit of w, walls allowed.
inline Weight dominant_representative(const RootData& rd, Weight w) {
    for (;;) {
        int neg = -1;
        for (int i = 0; i < rd.rank; ++i)
            if (w[static_cast<std::size_t>(i)] < 0) {
                neg = i;
                break;
            }
        if (neg < 0) return w;
        apply_simple_reflection(rd, neg, w);
    }
}

inline Rational inner_product(const RootData& rd, const Weight& v, const Weight& w) {
    check_rank(rd, v, "inner_product");
    check_rank(rd, w, "inner_product");
    Rational acc = 0;
    for (int i = 0; i < rd.rank; ++i) {
        if (v[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < rd.rank; ++j)
            acc += rd.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)];
    }
    return acc;
}

// form_scale * (v, w), exact in Int.
inline Int inner_product_scaled(const RootData& rd, const Weight& v, const Weight& w) {
    Int acc = 0;
    for (int i = 0; i < rd.rank; ++i) {
        const Int vi = v[static_cast<std::size_t>(i)];
        if (vi == 0) continue;
        const auto& row = rd.form_scaled[static_cast<std::size_t>(i)];
        for (int j = 0; j < rd.rank; ++j) acc += row[static_cast<std::size_t>(j)] * vi * w[static_cast<std::size_t>(j)];
    }
    return acc;
}

inline Int pairing(const std::vector<Int>& functional, const Weight& w) {
    Int acc = 0;
    for (std::size_t j = 0; j < functional.size(); ++j) acc += functional[j] * w[j];
    return acc;
}

// <w, theta^vee>: the affine level of a weight.
inline Int level_of(const RootData& rd, const Weight& w) {
    return pairing(rd.comarks, w);
}

// <w, 2 rho^vee>: the height grading used for dominance-compatible orderings.
inline Int height_pairing(const RootData& rd, const Weight& w) {
    return pairing(rd.two_rho_coroot, w);
}

inline BigInt weyl_dim(const RootData& rd, const Weight& lambda) {
    check_rank(rd, lambda, "weyl_dim");
    if (!is_dominant(lambda))
        throw domain_error_t("weyl_dim: weight " + format_weight(lambda) + " is not dominant");
    BigInt num = 1, den = 1;
    for (const auto& pr : rd.positive) {
        Int np = 0, dp = 0;
        for (int j = 0; j < rd.rank; ++j) {
            np += pr.coroot[static_cast<std::size_t>(j)] * (lambda[static_cast<std::size_t>(j)] + 1);
            dp += pr.coroot[static_cast<std::size_t>(j)];
        }
        num *= np;
        den *= dp;
    }
    BigInt q, rmd;
    divide_qr(num, den, q, rmd);
    if (rmd != 0) throw integrity_error_t("weyl_dim: non-integral dimension");
    return q;
}

// Full Weyl orbit of w, deterministic BFS order.
inline std::vector<Weight> weyl_orbit(const RootData& rd, const Weight& w) {
    check_rank(rd, w, "weyl_orbit");
    std::vector<Weight> out;
    std::unordered_set<Weight, WeightHash> seen;
    std::deque<Weight> queue;
    seen.insert(w);
    queue.push_back(w);
    while (!queue.empty()) {
        Weight cur = queue.front();
        queue.pop_front();
        out.push_back(cur);
        for (int i = 0; i < rd.rank; ++i) {
            if (cur[static_cast<std::size_t>(i)] == 0) continue;
            Weight nxt = cur;
            apply_simple_reflection(rd, i, nxt);
            if (seen.insert(nxt).second) queue.push_back(nxt);
        }
    }
    return out;
}

// Orbit of a strictly dominant vector together with determinant signs.
inline std::vector<std::pair<Weight, int>> weyl_orbit_signed(const RootData& rd, const Weight& w) {
    check_rank(rd, w, "weyl_orbit_signed");
    if (!is_strictly_dominant(w))
        throw domain_error_t("weyl_orbit_signed: " + format_weight(w) + " is not strictly dominant");
    std::vector<std::pair<Weight, int>> out;
    std::unordered_map<Weight, int, WeightHash> seen;
    std::deque<std::pair<Weight, int>> queue;
    seen.emplace(w, 1);
    queue.emplace_back(w, 1);
    while (!queue.empty()) {
        auto [cur, sgn] = queue.front();
        queue.pop_front();
        out.emplace_back(cur, sgn);
        for (int i = 0; i < rd.rank; ++i) {
            if (cur[static_cast<std::size_t>(i)] == 0) continue;
            Weight nxt = cur;
            apply_simple_reflection(rd, i, nxt);
            if (seen.emplace(nxt, -sgn).second) queue.emplace_back(nxt, -sgn);
        }
    }
    return out;
}

// All dominant weights with label sum <= bound, in alcove order.
inline std::vector<Weight> dominant_weights_up_to(const RootData& rd, Int bound) {
    if (bound < 0) throw domain_error_t("dominant_weights_up_to: negative bound");
    std::vector<Weight> out;
    Weight cur(static_cast<std::size_t>(rd.rank), 0);
    auto rec = [&](auto&& self, int pos, Int remaining) -> void {
        if (pos == rd.rank) {
            out.push_back(cur);
            return;
        }
        for (Int v = 0; v <= remaining; ++v) {
            cur[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, remaining - v);
        }
        cur[static_cast<std::size_t>(pos)] = 0;
    };
    rec(rec, 0, bound);
    std::sort(out.begin(), out.end(), AlcoveOrderLess{});
    return out;
}

} // namespace fusionkit
