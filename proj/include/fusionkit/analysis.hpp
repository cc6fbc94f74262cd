#pragma once

// Comparison layer: moments and multiset signatures of decompositions, the
// conjugation comparison (lambda x mu against lambda x mu-bar), verification
// and counterexample scans for the six conjugation properties, and the
// summary verdict table. Scans deduplicate pairs by the 8-element symmetry
// class generated by swapping the factors and conjugating either side; the
// compared quantities are invariant across each class.

#include <array>
#include <set>

#include "fusionkit/serialize.hpp"

namespace fusionkit {

constexpr double kSigmaTol = 1e-8;  // |Sigma(kappa)| threshold for property 6

// Moments m_0..m_r_max of the multiplicities: m_r = sum of N^r over terms,
// with m_0 the number of distinct terms.
inline std::vector<BigInt> moments(const Decomposition& d, int r_max = 3) {
    if (r_max < 0) throw domain_error_t("moments: negative r_max");
    std::vector<BigInt> out(static_cast<std::size_t>(r_max) + 1, 0);
    out[0] = static_cast<Int>(d.terms.size());
    for (const auto& [w, m] : d.terms) {
        BigInt p = 1;
        for (int r = 1; r <= r_max; ++r) {
            p *= m;
            out[static_cast<std::size_t>(r)] += p;
        }
    }
    return out;
}

// Multiset of multiplicity values with occurrence counts, e.g. "1^6 2^2".
struct MultiplicityMultiset {
    std::vector<std::pair<Int, Int>> counts;  // (value, occurrences), value ascending

    bool operator==(const MultiplicityMultiset&) const = default;

    std::string str() const {
        std::string out;
        for (const auto& [value, n] : counts) {
            if (!out.empty()) out.push_back(' ');
            out += std::to_string(value) + "^" + std::to_string(n);
        }
        return out;
    }
};

inline MultiplicityMultiset multiset_signature(const Decomposition& d) {
    std::map<Int, Int> byval;
    for (const auto& [w, m] : d.terms) ++byval[m];
    MultiplicityMultiset out;
    out.counts.assign(byval.begin(), byval.end());
    return out;
}

namespace detail {

inline BigInt sig_moment(const MultiplicityMultiset& s, int r) {
    BigInt acc = 0;
    for (const auto& [value, n] : s.counts) {
        BigInt p = 1;
        for (int i = 0; i < r; ++i) p *= value;
        acc += p * n;
    }
    return acc;
}

} // namespace detail

// One computation domain for the comparison layer: a tensor category, a
// fusion category at fixed level, or a finite-group character ring. Group
// irreps are addressed as one-label weights holding the irrep index.
class ProductDomain {
  public:
    // Domains keep pointers to the algebra, cache, or table; callers own
    // those objects and must keep them alive. Temporaries are rejected.
    static ProductDomain tensor(const RootData& rd, WeightSystemCache& cache) {
        ProductDomain d;
        d.desc_ = DecompositionContext{ContextKind::tensor, rd.id, 0, {}};
        d.rd_ = &rd;
        d.cache_ = &cache;
        return d;
    }
    static ProductDomain tensor(RootData&&, WeightSystemCache&) = delete;

    static ProductDomain fusion(const RootData& rd, Int level, WeightSystemCache& cache) {
        if (level < 0) throw domain_error_t("ProductDomain: negative level");
        ProductDomain d;
        d.desc_ = DecompositionContext{ContextKind::fusion, rd.id, level, {}};
        d.rd_ = &rd;
        d.cache_ = &cache;
        return d;
    }
    static ProductDomain fusion(RootData&&, Int, WeightSystemCache&) = delete;

    static ProductDomain group(const CharacterTable& table) {
        ProductDomain d;
        d.desc_ = DecompositionContext{ContextKind::group, AlgebraId{}, 0, table.name};
        d.table_ = &table;
        return d;
    }
    static ProductDomain group(CharacterTable&&) = delete;

    const DecompositionContext& descriptor() const { return desc_; }
    ContextKind kind() const { return desc_.kind; }
    Int level() const { return desc_.level; }

    const RootData& algebra() const {
        if (!rd_) throw domain_error_t("ProductDomain: group domains have no algebra");
        return *rd_;
    }

    WeightSystemCache& cache() const {
        if (!cache_) throw domain_error_t("ProductDomain: group domains have no weight cache");
        return *cache_;
    }

    const CharacterTable& table() const {
        if (!table_) throw domain_error_t("ProductDomain: not a group domain");
        return *table_;
    }

    Decomposition decompose(const Weight& a, const Weight& b) const {
        switch (desc_.kind) {
            case ContextKind::tensor: return tensor_decompose(*rd_, a, b, *cache_);
            case ContextKind::fusion: return fusion_decompose(*rd_, desc_.level, a, b, *cache_);
            case ContextKind::group: return group_tensor(*table_, irrep_index(a), irrep_index(b));
        }
        throw domain_error_t("ProductDomain: bad kind");
    }

    Weight conjugate(const Weight& w) const {
        if (desc_.kind == ContextKind::group) return {group_conjugate(*table_, irrep_index(w))};
        return conjugate_weight(*rd_, w);
    }

    // Enumeration domain: dominant weights with label sum <= bound for tensor
    // contexts, the full alcove for fusion, every irrep for groups.
    std::vector<Weight> enumerate(Int bound) const {
        switch (desc_.kind) {
            case ContextKind::tensor: return dominant_weights_up_to(*rd_, bound);
            case ContextKind::fusion: {
                std::vector<Weight> out;
                for (auto& aw : alcove(*rd_, desc_.level)) out.push_back(std::move(aw.weight));
                return out;
            }
            case ContextKind::group: {
                std::vector<Weight> out;
                for (std::size_t i = 0; i < table_->num_irreps(); ++i) out.push_back({static_cast<Int>(i)});
                return out;
            }
        }
        throw domain_error_t("ProductDomain: bad kind");
    }

  private:
    static Int irrep_index(const Weight& w) {
        if (w.size() != 1) throw domain_error_t("ProductDomain: group irreps are one-label weights");
        return w[0];
    }

    DecompositionContext desc_;
    const RootData* rd_ = nullptr;
    WeightSystemCache* cache_ = nullptr;
    const CharacterTable* table_ = nullptr;
};

struct ComparisonReport {
    DecompositionContext context;
    Weight lambda, mu, mu_bar;
    int r_max = 3;
    std::vector<BigInt> m, m_bar;  // indices 0..r_max
    MultiplicityMultiset sig, sig_bar;
    bool prop1_holds = false;      // m2 equality; always true, enforced
    bool prop2_holds = false;      // m1 equality
    bool m0_equal = false;
    bool property_P_holds = false; // multiset equality
};

// Compares lambda x mu with lambda x mu-bar. The m2 equality is a theorem in
// every supported context; a mismatch aborts, because it can only mean the
// decomposition code is wrong.
inline ComparisonReport compare_conjugation(const ProductDomain& dom, const Weight& lambda, const Weight& mu,
                                            int r_max = 3) {
    if (r_max < 0) throw domain_error_t("compare_conjugation: negative r_max");
    ComparisonReport rep;
    rep.context = dom.descriptor();
    rep.lambda = lambda;
    rep.mu = mu;
    rep.mu_bar = dom.conjugate(mu);
    rep.r_max = r_max;
    const Decomposition direct = dom.decompose(lambda, mu);
    const Decomposition conj = dom.decompose(lambda, rep.mu_bar);
    const int ext = std::max(2, r_max);
    rep.m = moments(direct, ext);
    rep.m_bar = moments(conj, ext);
    rep.sig = multiset_signature(direct);
    rep.sig_bar = multiset_signature(conj);
    rep.prop1_holds = rep.m[2] == rep.m_bar[2];
    rep.prop2_holds = rep.m[1] == rep.m_bar[1];
    rep.m0_equal = rep.m[0] == rep.m_bar[0];
    rep.property_P_holds = rep.sig == rep.sig_bar;
    if (!rep.prop1_holds)
        throw integrity_error_t("compare_conjugation: m2 mismatch for " + rep.context.describe() + " lambda=" +
                                format_weight(lambda) + " mu=" + format_weight(mu));
    if (rep.property_P_holds && (!rep.m0_equal || !rep.prop2_holds))
        throw integrity_error_t("compare_conjugation: equal multisets with unequal moments for " +
                                rep.context.describe());
    rep.m.resize(static_cast<std::size_t>(r_max) + 1);
    rep.m_bar.resize(static_cast<std::size_t>(r_max) + 1);
    return rep;
}

struct WitnessPair {
    Weight lambda, mu;
    bool operator==(const WitnessPair&) const = default;
};

namespace detail {

struct PairLess {
    bool operator()(const std::pair<Weight, Weight>& a, const std::pair<Weight, Weight>& b) const {
        AlcoveOrderLess less;
        if (less(a.first, b.first)) return true;
        if (less(b.first, a.first)) return false;
        return less(a.second, b.second);
    }
};

inline std::array<std::pair<Weight, Weight>, 8> pair_class(const ProductDomain& dom, const Weight& lam,
                                                           const Weight& mu) {
    const Weight lb = dom.conjugate(lam), mb = dom.conjugate(mu);
    return {{{lam, mu}, {mu, lam}, {lb, mb}, {mb, lb}, {lam, mb}, {mb, lam}, {lb, mu}, {mu, lb}}};
}

// Evaluates every symmetry class of ordered pairs once. The verdict array per
// class is (m2, m1, m0, multiset) equality between lambda x mu and
// lambda x mu-bar; it is invariant across a class because swapping the
// factors or conjugating either side permutes or conjugates the two compared
// multisets. The class representative is the least member that itself passes
// the mu filter, so filtered enumeration still covers every class.
struct PairScan {
    std::vector<std::pair<Weight, Weight>> reps;
    std::vector<std::array<bool, 4>> verdicts;
    std::size_t pairs_checked = 0;
};

inline PairScan scan_pairs(const ProductDomain& dom, Int bound, bool skip_self_conjugate_mu) {
    const auto domain = dom.enumerate(bound);
    PairScan out;
    PairLess less;
    for (const Weight& lam : domain)
        for (const Weight& mu : domain) {
            if (skip_self_conjugate_mu && dom.conjugate(mu) == mu) continue;
            ++out.pairs_checked;
            const std::pair<Weight, Weight> cur{lam, mu};
            bool canonical = true;
            for (const auto& var : pair_class(dom, lam, mu)) {
                if (skip_self_conjugate_mu && dom.conjugate(var.second) == var.second) continue;
                if (less(var, cur)) {
                    canonical = false;
                    break;
                }
            }
            if (canonical) out.reps.push_back(cur);
        }
    out.verdicts.assign(out.reps.size(), {});
    run_blocks(out.reps.size(), [&](std::size_t i) {
        const auto& [lam, mu] = out.reps[i];
        const auto sig = multiset_signature(dom.decompose(lam, mu));
        const auto sig_bar = multiset_signature(dom.decompose(lam, dom.conjugate(mu)));
        out.verdicts[i] = {sig_moment(sig, 2) == sig_moment(sig_bar, 2),
                           sig_moment(sig, 1) == sig_moment(sig_bar, 1),
                           sig_moment(sig, 0) == sig_moment(sig_bar, 0), sig == sig_bar};
    });
    return out;
}

inline int prop_verdict_index(int p) {
    switch (p) {
        case 1: return 0;
        case 2: return 1;
        case 5: return 2;
        case 3:
        case 4: return 3;
    }
    throw domain_error_t("verify_proposition: p must be between 1 and 6");
}

} // namespace detail

struct VerificationReport {
    int prop = 0;
    DecompositionContext context;
    Int bound = 0;
    std::size_t classes_checked = 0;
    std::size_t pairs_checked = 0;
    bool passed = true;
    std::vector<WitnessPair> violations;   // properties 1-5
    std::vector<Weight> kappa_violations;  // property 6
};

// Checks one of the six conjugation properties over a whole domain:
//   1: m2 equality (all pairs)          2: m1 equality
//   3, 4: multiset equality             5: m0 equality
//   6: Sigma(kappa) = 0 for every non-real alcove weight (fusion domains)
// Pairs with self-conjugate mu are vacuous and skipped for p in 2..5.
inline VerificationReport verify_proposition(int p, const ProductDomain& dom, Int bound = 0) {
    if (p < 1 || p > 6) throw domain_error_t("verify_proposition: p must be between 1 and 6");
    VerificationReport rep;
    rep.prop = p;
    rep.context = dom.descriptor();
    rep.bound = bound;

    if (p == 6) {
        if (dom.kind() != ContextKind::fusion)
            throw domain_error_t("verify_proposition: p=6 requires a fusion domain");
        const RootData& rd = dom.algebra();
        SMatrix s = smatrix(rd, dom.level(), dom.cache());
        AlcoveOrderLess less;
        std::set<Weight, AlcoveOrderLess> bad;
        for (const Weight& kappa : s.index) {
            if (fs_type(rd, kappa) == FsType::real_type) continue;
            ++rep.pairs_checked;
            const Weight kbar = conjugate_weight(rd, kappa);
            if (less(kbar, kappa)) continue;  // evaluate each {kappa, kappa-bar} once
            ++rep.classes_checked;
            if (std::abs(row_sum_sigma(s, kappa)) >= kSigmaTol) {
                bad.insert(kappa);
                bad.insert(kbar);
            }
        }
        rep.kappa_violations.assign(bad.begin(), bad.end());
        rep.passed = rep.kappa_violations.empty();
        return rep;
    }

    const int idx = detail::prop_verdict_index(p);
    const auto scan = detail::scan_pairs(dom, bound, p >= 2);
    rep.classes_checked = scan.reps.size();
    rep.pairs_checked = scan.pairs_checked;
    std::set<std::pair<Weight, Weight>, detail::PairLess> bad;
    for (std::size_t i = 0; i < scan.reps.size(); ++i)
        if (!scan.verdicts[i][static_cast<std::size_t>(idx)])
            for (const auto& var : detail::pair_class(dom, scan.reps[i].first, scan.reps[i].second)) {
                if (p >= 2 && dom.conjugate(var.second) == var.second) continue;
                bad.insert(var);
            }
    for (const auto& [lam, mu] : bad) rep.violations.push_back({lam, mu});
    rep.passed = rep.violations.empty();
    return rep;
}

// Violating ordered pairs in canonical order; stop_after = 0 means no limit.
inline std::vector<WitnessPair> scan_counterexamples(int p, const ProductDomain& dom, Int bound,
                                                     std::size_t stop_after = 0) {
    VerificationReport rep = verify_proposition(p, dom, bound);
    std::vector<WitnessPair> out = std::move(rep.violations);
    if (p == 6)
        for (const Weight& kappa : rep.kappa_violations) out.push_back({kappa, kappa});
    if (stop_after > 0 && out.size() > stop_after) out.resize(stop_after);
    return out;
}

// ---- Summary verdict table ----

struct TableOneBudget {
    Int a2_tensor_bound = 4;
    Int a2_max_level = 3;
    Int a3_tensor_bound = 3;
    Int a3_max_level = 2;
    Int a4_tensor_bound = 3;
    Int d5_tensor_bound = 2;
    Int a4_fusion_level = 2;
};

struct TableOneCell {
    bool holds = true;
    std::vector<std::string> searched;
    std::vector<std::string> witnesses;
};

struct TableOneReport {
    TableOneBudget budget;
    std::array<std::string, 4> row_names{"m2", "m1", "m0", "multiset"};
    std::array<std::string, 5> column_names{"A2", "A3", "other simple", "other affine", "finite groups"};
    std::array<std::array<TableOneCell, 5>, 4> cells;  // [row][column]

    std::string text() const {
        std::ostringstream os;
        auto pad = [](const std::string& s, std::size_t w) {
            // Count display columns, not bytes: UTF-8 continuation bytes
            // (0b10xxxxxx) add no width.
            std::size_t width = 0;
            for (unsigned char c : s)
                if ((c & 0xC0) != 0x80) ++width;
            std::string out = s;
            while (width++ < w) out.push_back(' ');
            return out;
        };
        os << pad("property", 10);
        for (const auto& c : column_names) os << pad(c, 16);
        os << "\n";
        for (std::size_t r = 0; r < cells.size(); ++r) {
            os << pad(row_names[r], 10);
            for (const auto& cell : cells[r]) os << pad(cell.holds ? "✓" : "X", 16);
            os << "\n";
        }
        os << "\nwitnesses:\n";
        bool any = false;
        for (std::size_t r = 0; r < cells.size(); ++r)
            for (std::size_t c = 0; c < cells[r].size(); ++c)
                for (const auto& w : cells[r][c].witnesses) {
                    any = true;
                    os << "  [" << row_names[r] << ", " << column_names[c] << "] " << w << "\n";
                }
        if (!any) os << "  none\n";
        os << "\nsearched:\n";
        for (std::size_t c = 0; c < column_names.size(); ++c)
            for (const auto& s : cells[0][c].searched) os << "  [" << column_names[c] << "] " << s << "\n";
        return os.str();
    }
};

// Regenerates the verdict table at configurable desk scale. Cells turn to X
// when either an exhaustive scan inside the budget or a seeded witness pair
// violates the property; check cells report the searched space.
inline TableOneReport table_one_report(const TableOneBudget& budget, WeightSystemCache& cache,
                                       std::ostream* progress = nullptr) {
    TableOneReport rep;
    rep.budget = budget;
    const RootData a2 = build_algebra({'A', 2});
    const RootData a3 = build_algebra({'A', 3});
    const RootData a4 = build_algebra({'A', 4});
    const RootData d5 = build_algebra({'D', 5});
    const std::vector<CharacterTable> tables{cyclic_table(3), s3_table(), q8_table(), f3m_table(7),
                                             f3m_table(13)};

    auto note = [&](const std::string& line) {
        if (progress) *progress << "table1: " << line << "\n";
    };

    auto run_scan = [&](std::size_t col, const ProductDomain& dom, Int bound, const std::string& label) {
        note("scanning " + label);
        const auto scan = detail::scan_pairs(dom, bound, true);
        const std::string space =
            label + ": " + std::to_string(scan.pairs_checked) + " pairs in " + std::to_string(scan.reps.size()) +
            " classes";
        for (std::size_t row = 0; row < 4; ++row) {
            auto& cell = rep.cells[row][col];
            cell.searched.push_back(space);
            for (std::size_t i = 0; i < scan.reps.size(); ++i)
                if (!scan.verdicts[i][row]) {
                    cell.holds = false;
                    if (cell.witnesses.size() < 5)
                        cell.witnesses.push_back(dom.descriptor().describe() + ": lambda=" +
                                                 format_weight(scan.reps[i].first) + " mu=" +
                                                 format_weight(scan.reps[i].second));
                }
        }
    };

    auto run_seed = [&](std::size_t col, const ProductDomain& dom, const Weight& lam, const Weight& mu) {
        note("seed " + dom.descriptor().describe() + " lambda=" + format_weight(lam) + " mu=" + format_weight(mu));
        const auto sig = multiset_signature(dom.decompose(lam, mu));
        const auto sig_bar = multiset_signature(dom.decompose(lam, dom.conjugate(mu)));
        const std::array<bool, 4> verdict{detail::sig_moment(sig, 2) == detail::sig_moment(sig_bar, 2),
                                          detail::sig_moment(sig, 1) == detail::sig_moment(sig_bar, 1),
                                          detail::sig_moment(sig, 0) == detail::sig_moment(sig_bar, 0),
                                          sig == sig_bar};
        for (std::size_t row = 0; row < 4; ++row)
            if (!verdict[row]) {
                auto& cell = rep.cells[row][col];
                cell.holds = false;
                cell.witnesses.push_back(dom.descriptor().describe() + ": lambda=" + format_weight(lam) +
                                         " mu=" + format_weight(mu));
            }
    };

    run_scan(0, ProductDomain::tensor(a2, cache), budget.a2_tensor_bound,
             "tensor(A2) label sum <= " + std::to_string(budget.a2_tensor_bound));
    for (Int k = 1; k <= budget.a2_max_level; ++k)
        run_scan(0, ProductDomain::fusion(a2, k, cache), 0, "fusion(A2,k=" + std::to_string(k) + ") full alcove");

    run_scan(1, ProductDomain::tensor(a3, cache), budget.a3_tensor_bound,
             "tensor(A3) label sum <= " + std::to_string(budget.a3_tensor_bound));
    for (Int k = 1; k <= budget.a3_max_level; ++k)
        run_scan(1, ProductDomain::fusion(a3, k, cache), 0, "fusion(A3,k=" + std::to_string(k) + ") full alcove");
    run_seed(1, ProductDomain::tensor(a3, cache), {1, 2, 2}, {1, 2, 2});

    run_scan(2, ProductDomain::tensor(a4, cache), budget.a4_tensor_bound,
             "tensor(A4) label sum <= " + std::to_string(budget.a4_tensor_bound));
    run_scan(2, ProductDomain::tensor(d5, cache), budget.d5_tensor_bound,
             "tensor(D5) label sum <= " + std::to_string(budget.d5_tensor_bound));
    run_seed(2, ProductDomain::tensor(d5, cache), {1, 1, 0, 1, 0}, {1, 1, 0, 1, 0});

    run_scan(3, ProductDomain::fusion(a4, budget.a4_fusion_level, cache), 0,
             "fusion(A4,k=" + std::to_string(budget.a4_fusion_level) + ") full alcove");
    run_seed(3, ProductDomain::fusion(a4, 6, cache), {1, 1, 1, 0}, {1, 1, 0, 1});

    for (const CharacterTable& t : tables)
        run_scan(4, ProductDomain::group(t), 0, "group(" + t.name + ") all pairs");

    note("done");
    return rep;
}

// ---- Text and JSON rendering ----

inline std::string format_report(const ComparisonReport& rep) {
    std::ostringstream os;
    os << "context: " << rep.context.describe() << "\n";
    os << "lambda: " << format_weight(rep.lambda) << "\n";
    os << "mu: " << format_weight(rep.mu) << "\n";
    os << "mu_bar: " << format_weight(rep.mu_bar) << "\n";
    os << "moments:";
    for (std::size_t r = 0; r < rep.m.size(); ++r) os << " m" << r << "=" << rep.m[r].str();
    os << "\nconjugate moments:";
    for (std::size_t r = 0; r < rep.m_bar.size(); ++r) os << " m" << r << "=" << rep.m_bar[r].str();
    os << "\nsignature: " << rep.sig.str() << "\n";
    os << "conjugate signature: " << rep.sig_bar.str() << "\n";
    os << "prop1 (m2 equal): " << (rep.prop1_holds ? "yes" : "no") << "\n";
    os << "prop2 (m1 equal): " << (rep.prop2_holds ? "yes" : "no") << "\n";
    os << "m0 equal: " << (rep.m0_equal ? "yes" : "no") << "\n";
    os << "property P (multisets equal): " << (rep.property_P_holds ? "yes" : "no") << "\n";
    return os.str();
}

inline std::string format_report(const VerificationReport& rep) {
    std::ostringstream os;
    os << "prop " << rep.prop << " on " << rep.context.describe();
    if (rep.context.kind == ContextKind::tensor) os << ", bound " << rep.bound;
    os << "\n";
    os << "classes checked: " << rep.classes_checked << "\n";
    os << "pairs checked: " << rep.pairs_checked << "\n";
    const std::size_t nviol = rep.prop == 6 ? rep.kappa_violations.size() : rep.violations.size();
    os << "result: " << (rep.passed ? "PASS" : "FAIL") << " (" << nviol << " violations)\n";
    for (const auto& v : rep.violations)
        os << "violation: lambda=" << format_weight(v.lambda) << " mu=" << format_weight(v.mu) << "\n";
    for (const auto& kappa : rep.kappa_violations) os << "violation: kappa=" << format_weight(kappa) << "\n";
    return os.str();
}

inline std::string to_json(const ComparisonReport& rep) {
    std::string out = "{\n  \"context\": " + to_json(rep.context, "  ") + ",\n";
    out += "  \"lambda\": " + detail::json_weight(rep.lambda) + ",\n";
    out += "  \"mu\": " + detail::json_weight(rep.mu) + ",\n";
    out += "  \"mu_bar\": " + detail::json_weight(rep.mu_bar) + ",\n";
    auto moments_json = [](const std::vector<BigInt>& m) {
        std::string s = "[";
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r) s.push_back(',');
            s += m[r].str();
        }
        return s + "]";
    };
    out += "  \"moments\": " + moments_json(rep.m) + ",\n";
    out += "  \"conjugate_moments\": " + moments_json(rep.m_bar) + ",\n";
    out += "  \"signature\": \"" + json_escape(rep.sig.str()) + "\",\n";
    out += "  \"conjugate_signature\": \"" + json_escape(rep.sig_bar.str()) + "\",\n";
    out += std::string("  \"prop1_holds\": ") + (rep.prop1_holds ? "true" : "false") + ",\n";
    out += std::string("  \"prop2_holds\": ") + (rep.prop2_holds ? "true" : "false") + ",\n";
    out += std::string("  \"m0_equal\": ") + (rep.m0_equal ? "true" : "false") + ",\n";
    out += std::string("  \"property_P_holds\": ") + (rep.property_P_holds ? "true" : "false") + "\n}";
    return out;
}

inline std::string to_json(const VerificationReport& rep) {
    std::string out = "{\n  \"prop\": " + std::to_string(rep.prop) + ",\n";
    out += "  \"context\": " + to_json(rep.context, "  ") + ",\n";
    out += "  \"bound\": " + std::to_string(rep.bound) + ",\n";
    out += "  \"classes_checked\": " + std::to_string(rep.classes_checked) + ",\n";
    out += "  \"pairs_checked\": " + std::to_string(rep.pairs_checked) + ",\n";
    out += std::string("  \"passed\": ") + (rep.passed ? "true" : "false") + ",\n";
    out += "  \"violations\": [";
    if (rep.prop == 6) {
        for (std::size_t i = 0; i < rep.kappa_violations.size(); ++i) {
            out += i ? ",\n    " : "\n    ";
            out += "{\"kappa\": " + detail::json_weight(rep.kappa_violations[i]) + "}";
        }
        out += rep.kappa_violations.empty() ? "]\n}" : "\n  ]\n}";
    } else {
        for (std::size_t i = 0; i < rep.violations.size(); ++i) {
            out += i ? ",\n    " : "\n    ";
            out += "{\"lambda\": " + detail::json_weight(rep.violations[i].lambda) +
                   ", \"mu\": " + detail::json_weight(rep.violations[i].mu) + "}";
        }
        out += rep.violations.empty() ? "]\n}" : "\n  ]\n}";
    }
    return out;
}

inline std::string to_json(const TableOneReport& rep) {
    auto string_array = [](const auto& items, const std::string& indent) {
        std::string s = "[";
        bool first = true;
        for (const auto& item : items) {
            s += first ? "\n" + indent + "  \"" : ",\n" + indent + "  \"";
            s += json_escape(item) + "\"";
            first = false;
        }
        return s + (first ? "]" : "\n" + indent + "]");
    };
    std::string out = "{\n  \"rows\": " + string_array(rep.row_names, "  ") + ",\n";
    out += "  \"columns\": " + string_array(rep.column_names, "  ") + ",\n";
    out += "  \"cells\": [";
    for (std::size_t r = 0; r < rep.cells.size(); ++r) {
        out += r ? ",\n    [" : "\n    [";
        for (std::size_t c = 0; c < rep.cells[r].size(); ++c) {
            const auto& cell = rep.cells[r][c];
            out += c ? ",\n      {" : "\n      {";
            out += std::string("\"holds\": ") + (cell.holds ? "true" : "false") + ", \"searched\": ";
            out += string_array(cell.searched, "      ");
            out += ", \"witnesses\": " + string_array(cell.witnesses, "      ") + "}";
        }
        out += "\n    ]";
    }
    out += "\n  ]\n}";
    return out;
}

} // namespace fusionkit
