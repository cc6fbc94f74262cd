#pragma once

// Level-k affine data: the integrable alcove, fusion products obtained by
// folding tensor terms with the affine Weyl group, the modular S matrix from
// the signed-orbit sum, and the quantities derived from it. S matrices are
// validated at construction (unitary, symmetric, S^2 = conjugation, positive
// vacuum row); the Verlinde route and the folding route stay separate so they
// can check each other.

#include <cmath>
#include <complex>

#include "fusionkit/tensor.hpp"

namespace fusionkit {

constexpr double kSMatrixTol = 1e-8;    // construction-time invariants
constexpr double kVerlindeTol = 1e-6;   // integrality of Verlinde coefficients
constexpr double kQdimTol = 1e-6;       // reality/positivity of quantum dims

struct AlcoveWeight {
    Weight weight;
    Int level = 0;  // <weight, theta^vee>
};

inline bool is_integrable(const RootData& rd, Int k, const Weight& w) {
    return is_dominant(w) && level_of(rd, w) <= k;
}

inline void require_integrable(const RootData& rd, Int k, const Weight& w, const char* what) {
    check_rank(rd, w, what);
    if (k < 0) throw domain_error_t(std::string(what) + ": negative level");
    if (!is_dominant(w))
        throw domain_error_t(std::string(what) + ": " + format_weight(w) + " is not dominant");
    if (level_of(rd, w) > k)
        throw domain_error_t(std::string(what) + ": " + format_weight(w) + " is not integrable at level " +
                             std::to_string(k));
}

// Integrable weights at level k, ordered label-sum ascending then lex
// descending. The vacuum is always first.
inline std::vector<AlcoveWeight> alcove(const RootData& rd, Int k) {
    if (k < 0) throw domain_error_t("alcove: negative level");
    std::vector<Weight> found;
    Weight cur(static_cast<std::size_t>(rd.rank), 0);
    auto rec = [&](auto&& self, int pos, Int budget) -> void {
        if (pos == rd.rank) {
            found.push_back(cur);
            return;
        }
        const Int comark = rd.comarks[static_cast<std::size_t>(pos)];
        for (Int v = 0; v * comark <= budget; ++v) {
            cur[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, budget - v * comark);
        }
        cur[static_cast<std::size_t>(pos)] = 0;
    };
    rec(rec, 0, k);
    std::sort(found.begin(), found.end(), AlcoveOrderLess{});
    std::vector<AlcoveWeight> out;
    out.reserve(found.size());
    for (auto& w : found) {
        const Int lev = level_of(rd, w);
        out.push_back(AlcoveWeight{std::move(w), lev});
    }
    return out;
}

// Fusion product at level k: each tensor term nu is folded into the open
// alcove by alternating finite reflections with the affine reflection on the
// level-(k + h^vee) wall; terms landing on either wall cancel out.
inline Decomposition fusion_decompose(const RootData& rd, Int k, const Weight& lambda, const Weight& mu,
                                      WeightSystemCache& cache) {
    require_integrable(rd, k, lambda, "fusion_decompose");
    require_integrable(rd, k, mu, "fusion_decompose");
    const Decomposition tens = tensor_decompose(rd, lambda, mu, cache);
    const Int khv = k + rd.dual_coxeter;
    const Weight rho = rd.rho();

    Decomposition dec;
    dec.context = DecompositionContext{ContextKind::fusion, rd.id, k, {}};
    for (const auto& [nu, n] : tens.terms) {
        Weight v = add(nu, rho);
        int sign = 1;
        bool dropped = false;
        for (int guard = 0;; ++guard) {
            if (guard > 10000) throw integrity_error_t("fusion_decompose: folding did not terminate");
            ReflectionOutcome out = reflect_to_dominant(rd, std::move(v));
            if (out.on_wall) {
                dropped = true;
                break;
            }
            v = std::move(out.result);
            sign *= out.sign;
            const Int t = level_of(rd, v);
            if (t == khv) {
                dropped = true;
                break;
            }
            if (t < khv) break;
            const Int excess = t - khv;
            for (int j = 0; j < rd.rank; ++j) v[static_cast<std::size_t>(j)] -= excess * rd.theta[static_cast<std::size_t>(j)];
            sign = -sign;
        }
        if (!dropped) dec.terms[sub(v, rho)] += sign * n;
    }
    for (auto it = dec.terms.begin(); it != dec.terms.end();) {
        if (it->second < 0)
            throw integrity_error_t("fusion_decompose: negative multiplicity at " + format_weight(it->first));
        if (!is_integrable(rd, k, it->first))
            throw integrity_error_t("fusion_decompose: non-integrable term " + format_weight(it->first));
        it = it->second == 0 ? dec.terms.erase(it) : std::next(it);
    }
    return dec;
}

struct SMatrix {
    AlgebraId algebra;
    Int level = 0;
    std::vector<Weight> index;                  // alcove order; row 0 is the vacuum
    std::vector<std::complex<double>> entries;  // row-major, size n*n
    std::unordered_map<Weight, std::size_t, WeightHash> pos;

    std::size_t size() const { return index.size(); }

    const std::complex<double>& at(std::size_t i, std::size_t j) const {
        return entries[i * index.size() + j];
    }

    std::size_t row_of(const Weight& w) const {
        auto it = pos.find(w);
        if (it == pos.end())
            throw domain_error_t("weight " + format_weight(w) + " is not integrable at level " +
                                 std::to_string(level));
        return it->second;
    }
};

namespace detail {

inline void validate_smatrix(const RootData& rd, const SMatrix& s) {
    const std::size_t n = s.size();
    for (std::size_t j = 0; j < n; ++j) {
        const auto v = s.at(0, j);
        if (std::abs(v.imag()) > kSMatrixTol || v.real() <= 0)
            throw integrity_error_t("smatrix: vacuum row is not positive real");
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            if (std::abs(s.at(i, j) - s.at(j, i)) > kSMatrixTol)
                throw integrity_error_t("smatrix: not symmetric");
            std::complex<double> dot = 0, sq = 0;
            for (std::size_t l = 0; l < n; ++l) {
                dot += s.at(i, l) * std::conj(s.at(j, l));
                sq += s.at(i, l) * s.at(l, j);
            }
            if (std::abs(dot - (i == j ? 1.0 : 0.0)) > kSMatrixTol)
                throw integrity_error_t("smatrix: not unitary");
            // S^2 is the conjugation permutation.
            const bool hit = s.index[j] == conjugate_weight(rd, s.index[i]);
            if (std::abs(sq - (hit ? 1.0 : 0.0)) > kSMatrixTol)
                throw integrity_error_t("smatrix: S^2 is not the conjugation permutation");
        }
}

} // namespace detail

// Kac-Peterson sum over the signed orbit of lambda + rho, with exact rational
// phases, normalized so the matrix is unitary with a positive vacuum row.
inline SMatrix smatrix(const RootData& rd, Int k, WeightSystemCache&) {
    if (k < 0) throw domain_error_t("smatrix: negative level");
    auto alc = alcove(rd, k);
    const BigInt work = rd.weyl_order * BigInt(alc.size());
    if (work > 100000000) throw capacity_error_t("smatrix: |W| * |alcove| exceeds 1e8");

    SMatrix s;
    s.algebra = rd.id;
    s.level = k;
    s.index.reserve(alc.size());
    for (auto& aw : alc) s.index.push_back(aw.weight);
    const std::size_t n = s.index.size();
    for (std::size_t i = 0; i < n; ++i) s.pos.emplace(s.index[i], i);
    if (s.index[0] != Weight(static_cast<std::size_t>(rd.rank), 0))
        throw integrity_error_t("smatrix: vacuum is not the first alcove weight");

    const Weight rho = rd.rho();
    const Int den = rd.form_scale * (k + rd.dual_coxeter);
    std::vector<Weight> shifted(n);
    for (std::size_t j = 0; j < n; ++j) shifted[j] = add(s.index[j], rho);

    s.entries.assign(n * n, {0.0, 0.0});
    run_blocks(n, [&](std::size_t row) {
        const auto orbit = weyl_orbit_signed(rd, shifted[row]);
        for (const auto& [u, sgn] : orbit) {
            for (std::size_t col = 0; col < n; ++col) {
                const Int ip = inner_product_scaled(rd, u, shifted[col]);
                const Int rem = ((ip % den) + den) % den;
                const double angle = -2.0 * M_PI * static_cast<double>(rem) / static_cast<double>(den);
                s.entries[row * n + col] += std::complex<double>(sgn * std::cos(angle), sgn * std::sin(angle));
            }
        }
    });

    double norm0 = 0;
    for (std::size_t j = 0; j < n; ++j) norm0 += std::norm(s.entries[j]);
    norm0 = std::sqrt(norm0);
    if (norm0 <= 0) throw integrity_error_t("smatrix: vanishing vacuum row");
    const std::complex<double> s00 = s.entries[0];
    if (std::abs(s00) <= 0) throw integrity_error_t("smatrix: vanishing vacuum entry");
    const std::complex<double> scale = std::conj(s00 / std::abs(s00)) / norm0;
    for (auto& e : s.entries) e *= scale;

    detail::validate_smatrix(rd, s);
    return s;
}

// Fusion coefficients N_{lambda mu}^nu from the S matrix. Each coefficient
// must be within kVerlindeTol of a nonnegative integer.
inline Decomposition verlinde_fusion(const RootData& rd, const SMatrix& s, const Weight& lambda,
                                     const Weight& mu) {
    const std::size_t li = s.row_of(lambda), mi = s.row_of(mu);
    const std::size_t n = s.size();
    Decomposition dec;
    dec.context = DecompositionContext{ContextKind::fusion, rd.id, s.level, {}};
    for (std::size_t ni = 0; ni < n; ++ni) {
        std::complex<double> acc = 0;
        for (std::size_t kap = 0; kap < n; ++kap)
            acc += s.at(li, kap) * s.at(mi, kap) * std::conj(s.at(ni, kap)) / s.at(0, kap);
        const double rounded = std::round(acc.real());
        if (std::abs(acc.imag()) > kVerlindeTol || std::abs(acc.real() - rounded) > kVerlindeTol || rounded < 0)
            throw integrity_error_t("verlinde_fusion: coefficient is not a nonnegative integer at " +
                                    format_weight(s.index[ni]));
        if (rounded > 0) dec.terms.emplace(s.index[ni], static_cast<Int>(rounded));
    }
    return dec;
}

// S_{0 lambda} / S_{0 0}, validated real and positive.
inline double quantum_dim(const SMatrix& s, const Weight& lambda) {
    const std::size_t li = s.row_of(lambda);
    const std::complex<double> q = s.at(0, li) / s.at(0, 0);
    if (std::abs(q.imag()) > kQdimTol || q.real() <= 0)
        throw integrity_error_t("quantum_dim: value is not positive real");
    return q.real();
}

// Sigma(kappa) = sum over the alcove of the kappa row of S.
inline std::complex<double> row_sum_sigma(const SMatrix& s, const Weight& kappa) {
    const std::size_t ki = s.row_of(kappa);
    std::complex<double> acc = 0;
    for (std::size_t j = 0; j < s.size(); ++j) acc += s.at(ki, j);
    return acc;
}

enum class FsType { complex_type, real_type, quaternionic_type };

inline const char* fs_type_name(FsType t) {
    switch (t) {
        case FsType::complex_type: return "complex";
        case FsType::real_type: return "real";
        case FsType::quaternionic_type: return "quaternionic";
    }
    return "";
}

// Frobenius-Schur type: complex unless self-conjugate; self-conjugate weights
// split by the parity of <lambda, 2 rho^vee>.
inline FsType fs_type(const RootData& rd, const Weight& lambda) {
    check_rank(rd, lambda, "fs_type");
    if (!is_dominant(lambda))
        throw domain_error_t("fs_type: " + format_weight(lambda) + " is not dominant");
    if (conjugate_weight(rd, lambda) != lambda) return FsType::complex_type;
    return height_pairing(rd, lambda) % 2 != 0 ? FsType::quaternionic_type : FsType::real_type;
}

} // namespace fusionkit
