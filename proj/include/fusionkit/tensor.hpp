#pragma once

// Tensor product decompositions. tensor_decompose runs the reflection-based
// algorithm over the weight system of the smaller factor; tensor_oracle
// recomputes small cases by character convolution and highest-weight peeling,
// sharing no code path with the former beyond weight systems themselves.

#include <map>
#include <sstream>
#include <string>
#include <unordered_map>

#include "fusionkit/parallel.hpp"
#include "fusionkit/repsys.hpp"

namespace fusionkit {

enum class ContextKind { tensor, fusion, group };

inline const char* context_kind_name(ContextKind k) {
    switch (k) {
        case ContextKind::tensor: return "tensor";
        case ContextKind::fusion: return "fusion";
        case ContextKind::group: return "group";
    }
    return "";
}

struct DecompositionContext {
    ContextKind kind = ContextKind::tensor;
    AlgebraId algebra{};
    Int level = 0;       // fusion only
    std::string table;   // group only

    std::string describe() const {
        switch (kind) {
            case ContextKind::tensor: return "tensor(" + algebra.name() + ")";
            case ContextKind::fusion: return "fusion(" + algebra.name() + ",k=" + std::to_string(level) + ")";
            case ContextKind::group: return "group(" + table + ")";
        }
        return {};
    }

    bool operator==(const DecompositionContext& o) const {
        return kind == o.kind && algebra == o.algebra && level == o.level && table == o.table;
    }
};

struct Decomposition {
    DecompositionContext context;
    std::map<Weight, Int> terms;

    bool operator==(const Decomposition& o) const { return context == o.context && terms == o.terms; }
};

// Terms in canonical print order: graded lex descending for Lie contexts,
// ascending irrep index for group contexts.
inline std::vector<std::pair<Weight, Int>> sorted_terms(const Decomposition& d) {
    std::vector<std::pair<Weight, Int>> out(d.terms.begin(), d.terms.end());
    if (d.context.kind != ContextKind::group)
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return TermOrderLess{}(a.first, b.first); });
    return out;
}

inline std::string format_terms(const Decomposition& d) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, m] : sorted_terms(d)) {
        if (!first) os << " + ";
        first = false;
        os << m << format_weight(w);
    }
    if (first) os << "0";
    return os.str();
}

namespace detail {

inline void validate_tensor_inputs(const RootData& rd, const Weight& lambda, const Weight& mu, const char* what) {
    check_rank(rd, lambda, what);
    check_rank(rd, mu, what);
    if (!is_dominant(lambda))
        throw domain_error_t(std::string(what) + ": " + format_weight(lambda) + " is not dominant");
    if (!is_dominant(mu))
        throw domain_error_t(std::string(what) + ": " + format_weight(mu) + " is not dominant");
}

} // namespace detail

// N_{lambda mu}^nu for all nu, by signed reflection of mu + rho shifted
// through the weight system of the smaller factor. Deterministic for any
// worker-thread count: the block partition is fixed and merging is
// commutative integer addition.
inline Decomposition tensor_decompose(const RootData& rd, const Weight& lambda, const Weight& mu,
                                      WeightSystemCache& cache) {
    detail::validate_tensor_inputs(rd, lambda, mu, "tensor_decompose");
    const BigInt dl = weyl_dim(rd, lambda), dm = weyl_dim(rd, mu);
    const Weight& iter = dm < dl ? mu : lambda;
    const Weight& base = dm < dl ? lambda : mu;

    auto ws = cache.get(rd, iter);
    const Weight base_rho = add(base, rd.rho());
    const Weight rho = rd.rho();

    constexpr std::size_t kChunk = 16;
    const std::size_t blocks = (ws->dominant.size() + kChunk - 1) / kChunk;
    std::vector<std::map<Weight, Int>> partial(blocks);
    run_blocks(blocks, [&](std::size_t b) {
        auto& acc = partial[b];
        const std::size_t lo = b * kChunk;
        const std::size_t hi = std::min(lo + kChunk, ws->dominant.size());
        for (std::size_t i = lo; i < hi; ++i) {
            const auto& [delta, m] = ws->dominant[i];
            std::unordered_set<Weight, WeightHash> seen;
            std::deque<Weight> queue;
            seen.insert(delta);
            queue.push_back(delta);
            while (!queue.empty()) {
                Weight cur = queue.front();
                queue.pop_front();
                ReflectionOutcome out = reflect_to_dominant(rd, add(cur, base_rho));
                if (!out.on_wall) acc[sub(out.result, rho)] += out.sign * m;
                for (int s = 0; s < rd.rank; ++s) {
                    if (cur[static_cast<std::size_t>(s)] == 0) continue;
                    Weight nxt = cur;
                    apply_simple_reflection(rd, s, nxt);
                    if (seen.insert(nxt).second) queue.push_back(nxt);
                }
            }
        }
    });

    Decomposition dec;
    dec.context = DecompositionContext{ContextKind::tensor, rd.id, 0, {}};
    for (auto& part : partial)
        for (const auto& [w, n] : part) dec.terms[w] += n;
    for (auto it = dec.terms.begin(); it != dec.terms.end();) {
        if (it->second < 0)
            throw integrity_error_t("tensor_decompose: negative multiplicity at " + format_weight(it->first));
        it = it->second == 0 ? dec.terms.erase(it) : std::next(it);
    }
    return dec;
}

// Independent check for small inputs: convolve the two weight-multiset
// characters, then peel highest terms in a dominance-compatible order
// (height pairing descending, lex descending).
inline Decomposition tensor_oracle(const RootData& rd, const Weight& lambda, const Weight& mu,
                                   WeightSystemCache& cache) {
    detail::validate_tensor_inputs(rd, lambda, mu, "tensor_oracle");
    if (rd.rank > 3) throw capacity_error_t("tensor_oracle: rank must be at most 3");
    if (weyl_dim(rd, lambda) * weyl_dim(rd, mu) > 100000000)
        throw capacity_error_t("tensor_oracle: dimension product exceeds 1e8");

    auto expand = [&](const Weight& lam) {
        std::unordered_map<Weight, Int, WeightHash> full;
        for_each_weight(rd, *cache.get(rd, lam), [&](const Weight& w, Int m) { full[w] += m; });
        return full;
    };
    const auto left = expand(lambda);
    const auto right = expand(mu);

    std::unordered_map<Weight, Int, WeightHash> conv;
    conv.reserve(left.size() * 2);
    for (const auto& [w1, m1] : left)
        for (const auto& [w2, m2] : right) conv[add(w1, w2)] += m1 * m2;

    struct HeightLexDesc {
        const RootData* rd;
        bool operator()(const Weight& a, const Weight& b) const {
            const Int ha = height_pairing(*rd, a), hb = height_pairing(*rd, b);
            if (ha != hb) return ha > hb;
            return a > b;
        }
    };
    std::map<Weight, Int, HeightLexDesc> remaining{HeightLexDesc{&rd}};
    for (const auto& [w, m] : conv)
        if (m != 0) remaining.emplace(w, m);

    Decomposition dec;
    dec.context = DecompositionContext{ContextKind::tensor, rd.id, 0, {}};
    while (!remaining.empty()) {
        const auto [nu, count] = *remaining.begin();
        if (!is_dominant(nu) || count < 0)
            throw integrity_error_t("tensor_oracle: peeling reached an invalid leader at " + format_weight(nu));
        dec.terms.emplace(nu, count);
        for_each_weight(rd, *cache.get(rd, nu), [&](const Weight& w, Int m) {
            auto it = remaining.find(w);
            if (it == remaining.end())
                throw integrity_error_t("tensor_oracle: character underflow at " + format_weight(w));
            it->second -= count * m;
            if (it->second == 0)
                remaining.erase(it);
            else if (it->second < 0)
                throw integrity_error_t("tensor_oracle: character underflow at " + format_weight(w));
        });
    }
    return dec;
}

// DOT digraph of multiplication by f: one edge source -> nu per term of
// source x f. Sources range over dominant weights with label sum <= bound;
// targets join the vertex set even beyond the bound.
inline std::string tensor_graph(const RootData& rd, const Weight& f, Int bound, WeightSystemCache& cache) {
    check_rank(rd, f, "tensor_graph");
    if (!is_dominant(f)) throw domain_error_t("tensor_graph: " + format_weight(f) + " is not dominant");
    std::vector<Weight> sources = dominant_weights_up_to(rd, bound);
    std::map<Weight, std::vector<std::pair<Weight, Int>>, AlcoveOrderLess> edges;
    std::map<Weight, char, AlcoveOrderLess> vertices;
    for (const Weight& src : sources) {
        Decomposition d = tensor_decompose(rd, src, f, cache);
        vertices.emplace(src, 0);
        auto& out = edges[src];
        for (const auto& [nu, n] : d.terms) {
            out.emplace_back(nu, n);
            vertices.emplace(nu, 0);
        }
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return AlcoveOrderLess{}(a.first, b.first); });
    }
    std::ostringstream os;
    os << "digraph tensor_graph {\n  rankdir=LR;\n";
    for (const auto& [v, _] : vertices) os << "  \"" << format_weight(v) << "\";\n";
    for (const auto& [src, outs] : edges)
        for (const auto& [nu, n] : outs)
            os << "  \"" << format_weight(src) << "\" -> \"" << format_weight(nu) << "\" [label=" << n << "];\n";
    os << "}\n";
    return os.str();
}

} // namespace fusionkit
