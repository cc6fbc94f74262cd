#pragma once

// Weight systems of irreducible highest-weight modules. Dominant weights are
// enumerated through the saturation property (dominant mu <= lambda), their
// multiplicities come from the Freudenthal recursion in exact scaled-integer
// arithmetic, and the full system streams orbit by orbit so large modules
// never materialize at once. A cache keeps systems shared in-process and can
// persist them to disk.

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "fusionkit/algebra.hpp"

namespace fusionkit {

// Weyl order of the parabolic subgroup generated by the given simple
// reflections, via classification of the induced subdiagram components.
inline BigInt parabolic_weyl_order(const RootData& rd, const std::vector<int>& nodes) {
    std::vector<char> in(static_cast<std::size_t>(rd.rank), 0);
    for (int n : nodes) in[static_cast<std::size_t>(n)] = 1;
    std::vector<char> done(static_cast<std::size_t>(rd.rank), 0);
    BigInt order = 1;
    for (int start : nodes) {
        if (done[static_cast<std::size_t>(start)]) continue;
        // Collect the connected component of start inside the subdiagram.
        std::vector<int> comp;
        std::vector<int> stack{start};
        done[static_cast<std::size_t>(start)] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int j = 0; j < rd.rank; ++j) {
                if (j == v || !in[static_cast<std::size_t>(j)] || done[static_cast<std::size_t>(j)]) continue;
                if (rd.cartan[static_cast<std::size_t>(v)][static_cast<std::size_t>(j)] != 0) {
                    done[static_cast<std::size_t>(j)] = 1;
                    stack.push_back(j);
                }
            }
        }
        const int n = static_cast<int>(comp.size());
        int max_bond = 1, max_degree = 0;
        int double_bond_a = -1, double_bond_b = -1;
        std::vector<int> degree(comp.size(), 0);
        for (std::size_t a = 0; a < comp.size(); ++a)
            for (std::size_t b = a + 1; b < comp.size(); ++b) {
                Int cab = rd.cartan[static_cast<std::size_t>(comp[a])][static_cast<std::size_t>(comp[b])];
                Int cba = rd.cartan[static_cast<std::size_t>(comp[b])][static_cast<std::size_t>(comp[a])];
                if (cab == 0) continue;
                ++degree[a];
                ++degree[b];
                int bond = static_cast<int>(cab * cba);
                if (bond >= 2 && double_bond_a < 0) {
                    double_bond_a = static_cast<int>(a);
                    double_bond_b = static_cast<int>(b);
                }
                max_bond = std::max(max_bond, bond);
            }
        for (int d : degree) max_degree = std::max(max_degree, d);

        BigInt comp_order;
        if (max_bond == 3) {
            comp_order = 12;  // G2
        } else if (max_bond == 2) {
            // B/C share one Weyl order; F4 is the interior double bond on 4 nodes.
            bool interior = double_bond_a >= 0 && degree[static_cast<std::size_t>(double_bond_a)] == 2 &&
                            degree[static_cast<std::size_t>(double_bond_b)] == 2;
            if (n == 4 && interior)
                comp_order = 1152;
            else
                comp_order = detail::factorial(n) << n;
        } else if (max_degree <= 2) {
            comp_order = detail::factorial(n + 1);  // A_n
        } else {
            // One trivalent node: sorted arm lengths decide D vs E.
            int center = -1;
            for (std::size_t a = 0; a < comp.size(); ++a)
                if (degree[a] == 3) center = comp[a];
            std::vector<int> arms;
            for (int j = 0; j < rd.rank; ++j) {
                if (!in[static_cast<std::size_t>(j)] || j == center) continue;
                if (rd.cartan[static_cast<std::size_t>(center)][static_cast<std::size_t>(j)] == 0) continue;
                // Walk away from the center.
                int len = 1, prev = center, cur = j;
                for (;;) {
                    int nxt = -1;
                    for (int k = 0; k < rd.rank; ++k) {
                        if (k == prev || k == cur || !in[static_cast<std::size_t>(k)]) continue;
                        if (rd.cartan[static_cast<std::size_t>(cur)][static_cast<std::size_t>(k)] != 0) {
                            nxt = k;
                            break;
                        }
                    }
                    if (nxt < 0) break;
                    prev = cur;
                    cur = nxt;
                    ++len;
                }
                arms.push_back(len);
            }
            std::sort(arms.begin(), arms.end());
            if (arms.size() != 3) throw integrity_error_t("unclassifiable parabolic component");
            if (arms[0] == 1 && arms[1] == 1)
                comp_order = detail::factorial(n) << (n - 1);  // D_n
            else if (arms == std::vector<int>{1, 2, 2})
                comp_order = 51840;
            else if (arms == std::vector<int>{1, 2, 3})
                comp_order = 2903040;
            else if (arms == std::vector<int>{1, 2, 4})
                comp_order = 696729600;
            else
                throw integrity_error_t("unclassifiable parabolic component");
        }
        order *= comp_order;
    }
    return order;
}

// |W . w| for dominant w: the stabilizer is the parabolic on the zero labels.
inline BigInt weyl_orbit_size(const RootData& rd, const Weight& w) {
    if (!is_dominant(w)) throw domain_error_t("weyl_orbit_size: weight is not dominant");
    std::vector<int> zeros;
    for (int i = 0; i < rd.rank; ++i)
        if (w[static_cast<std::size_t>(i)] == 0) zeros.push_back(i);
    BigInt stab = parabolic_weyl_order(rd, zeros);
    BigInt q, r;
    divide_qr(rd.weyl_order, stab, q, r);
    if (r != 0) throw integrity_error_t("parabolic order does not divide the Weyl order");
    return q;
}

struct WeightSystem {
    AlgebraId algebra;
    Weight highest;
    // Dominant weights with multiplicities, ordered by height pairing
    // descending (depth from the highest weight ascending), ties lex
    // descending. The first entry is the highest weight with multiplicity 1.
    std::vector<std::pair<Weight, Int>> dominant;
    BigInt total_dim = 0;
    std::unordered_map<Weight, Int, WeightHash> by_dominant;

    void build_index() {
        by_dominant.clear();
        by_dominant.reserve(dominant.size() * 2);
        for (const auto& [w, m] : dominant) by_dominant.emplace(w, m);
    }
};

namespace detail {

// All dominant mu with lambda - mu in the positive root lattice, by depth
// search over root coordinates bounded by C^-1 lambda.
inline std::vector<Weight> dominant_slice(const RootData& rd, const Weight& lambda) {
    const int r = rd.rank;
    std::vector<Int> bound(static_cast<std::size_t>(r), 0);
    for (int i = 0; i < r; ++i) {
        Rational b = 0;
        for (int j = 0; j < r; ++j) b += rd.inverse_cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * lambda[static_cast<std::size_t>(j)];
        if (b < 0) throw integrity_error_t("negative saturation bound");
        bound[static_cast<std::size_t>(i)] = static_cast<Int>(numerator(b) / denominator(b));
    }
    std::vector<Int> alpha_height(static_cast<std::size_t>(r), 0);
    for (int i = 0; i < r; ++i) {
        Weight ai(static_cast<std::size_t>(r), 0);
        for (int j = 0; j < r; ++j) ai[static_cast<std::size_t>(j)] = rd.cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        alpha_height[static_cast<std::size_t>(i)] = height_pairing(rd, ai);
    }
    std::vector<Weight> out;
    Weight mu = lambda;
    Int hp = height_pairing(rd, lambda);
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == r) {
            if (is_dominant(mu)) out.push_back(mu);
            return;
        }
        Int used = 0;
        for (Int c = 0;; ++c) {
            self(self, pos + 1);
            if (c == bound[static_cast<std::size_t>(pos)] || hp - alpha_height[static_cast<std::size_t>(pos)] < 0) break;
            for (int j = 0; j < r; ++j) mu[static_cast<std::size_t>(j)] -= rd.cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(pos)];
            hp -= alpha_height[static_cast<std::size_t>(pos)];
            ++used;
        }
        for (int j = 0; j < r; ++j) mu[static_cast<std::size_t>(j)] += used * rd.cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(pos)];
        hp += used * alpha_height[static_cast<std::size_t>(pos)];
    };
    rec(rec, 0);
    return out;
}

} // namespace detail

// Freudenthal multiplicities for every dominant weight of the module with
// highest weight lambda. The total dimension is cross-checked against the
// Weyl dimension formula before the system is returned.
inline WeightSystem compute_weight_system(const RootData& rd, const Weight& lambda) {
    check_rank(rd, lambda, "compute_weight_system");
    if (!is_dominant(lambda))
        throw domain_error_t("compute_weight_system: " + format_weight(lambda) + " is not dominant");

    WeightSystem ws;
    ws.algebra = rd.id;
    ws.highest = lambda;

    std::vector<Weight> cands = detail::dominant_slice(rd, lambda);
    std::sort(cands.begin(), cands.end(), [&](const Weight& a, const Weight& b) {
        Int ha = height_pairing(rd, a), hb = height_pairing(rd, b);
        if (ha != hb) return ha > hb;
        return a > b;
    });
    if (cands.empty() || cands.front() != lambda)
        throw integrity_error_t("saturation slice does not start at the highest weight");

    std::unordered_map<Weight, std::size_t, WeightHash> idx;
    idx.reserve(cands.size() * 2);
    for (std::size_t i = 0; i < cands.size(); ++i) idx.emplace(cands[i], i);

    std::vector<Int> mult(cands.size(), 0);
    mult[0] = 1;
    const Weight lam_rho = add(lambda, rd.rho());
    const Int norm_top = inner_product_scaled(rd, lam_rho, lam_rho);

    for (std::size_t i = 1; i < cands.size(); ++i) {
        const Weight& mu = cands[i];
        const Weight mu_rho = add(mu, rd.rho());
        const Int denom = norm_top - inner_product_scaled(rd, mu_rho, mu_rho);
        if (denom <= 0) throw integrity_error_t("Freudenthal denominator is not positive");
        __int128 total = 0;
        for (const auto& pr : rd.positive) {
            Weight nu = mu;
            for (;;) {
                nu = add(nu, pr.labels);
                auto it = idx.find(dominant_representative(rd, nu));
                if (it == idx.end()) break;  // the alpha-string has ended
                total += static_cast<__int128>(mult[it->second]) * inner_product_scaled(rd, nu, pr.labels);
            }
        }
        total *= 2;
        if (total <= 0 || total % denom != 0)
            throw integrity_error_t("Freudenthal recursion produced a non-integral multiplicity");
        const __int128 m = total / denom;
        if (m > std::numeric_limits<Int>::max())
            throw integrity_error_t("weight multiplicity overflows");
        mult[i] = static_cast<Int>(m);
    }

    ws.dominant.reserve(cands.size());
    BigInt total_dim = 0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        ws.dominant.emplace_back(cands[i], mult[i]);
        total_dim += BigInt(mult[i]) * weyl_orbit_size(rd, cands[i]);
    }
    ws.total_dim = total_dim;
    if (total_dim != weyl_dim(rd, lambda))
        throw integrity_error_t("weight system dimension does not match the Weyl formula");
    ws.build_index();
    return ws;
}

// Multiplicity of an arbitrary weight, via its dominant representative.
inline Int multiplicity_of(const RootData& rd, const WeightSystem& ws, const Weight& w) {
    auto it = ws.by_dominant.find(dominant_representative(rd, w));
    return it == ws.by_dominant.end() ? 0 : it->second;
}

// Streams every weight of the module (with its multiplicity) orbit by orbit,
// in deterministic order. Memory stays bounded by the largest single orbit.
template <class F>
inline void for_each_weight(const RootData& rd, const WeightSystem& ws, F&& f) {
    for (const auto& [delta, m] : ws.dominant) {
        std::unordered_set<Weight, WeightHash> seen;
        std::deque<Weight> queue;
        seen.insert(delta);
        queue.push_back(delta);
        while (!queue.empty()) {
            Weight cur = queue.front();
            queue.pop_front();
            f(cur, m);
            for (int i = 0; i < rd.rank; ++i) {
                if (cur[static_cast<std::size_t>(i)] == 0) continue;
                Weight nxt = cur;
                apply_simple_reflection(rd, i, nxt);
                if (seen.insert(nxt).second) queue.push_back(nxt);
            }
        }
    }
}

namespace detail {

constexpr char kCacheMagic[4] = {'F', 'K', 'W', 'S'};
constexpr std::uint16_t kCacheVersion = 1;

template <class T>
inline void put_raw(std::ofstream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
inline bool get_raw(std::ifstream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return static_cast<bool>(is);
}

inline std::string cache_file_name(const AlgebraId& id, const Weight& lambda) {
    std::string name = id.name();
    for (Int x : lambda) name += "_" + std::to_string(x);
    return name + ".fkws";
}

inline bool write_weight_system(const std::filesystem::path& dir, const WeightSystem& ws) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const auto path = dir / cache_file_name(ws.algebra, ws.highest);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) return false;
        os.write(kCacheMagic, 4);
        put_raw(os, kCacheVersion);
        put_raw(os, static_cast<std::uint8_t>(ws.algebra.series));
        put_raw(os, static_cast<std::uint8_t>(ws.algebra.rank));
        for (Int x : ws.highest) put_raw(os, static_cast<std::int64_t>(x));
        put_raw(os, static_cast<std::uint64_t>(ws.dominant.size()));
        for (const auto& [w, m] : ws.dominant) {
            for (Int x : w) put_raw(os, static_cast<std::int64_t>(x));
            put_raw(os, static_cast<std::int64_t>(m));
        }
        if (!os) return false;
    }
    std::filesystem::rename(tmp, path, ec);
    return !ec;
}

// Returns nullptr when the file is absent or fails any validation step; the
// caller recomputes and overwrites. The dimension cross-check against the
// Weyl formula keeps a corrupt cache from poisoning results.
inline std::shared_ptr<WeightSystem> read_weight_system(const std::filesystem::path& dir, const RootData& rd,
                                                        const Weight& lambda) {
    const auto path = dir / cache_file_name(rd.id, lambda);
    std::ifstream is(path, std::ios::binary);
    if (!is) return nullptr;
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kCacheMagic, 4) != 0) return nullptr;
    std::uint16_t version = 0;
    std::uint8_t series = 0, rank = 0;
    if (!get_raw(is, version) || version != kCacheVersion) return nullptr;
    if (!get_raw(is, series) || series != static_cast<std::uint8_t>(rd.id.series)) return nullptr;
    if (!get_raw(is, rank) || rank != static_cast<std::uint8_t>(rd.id.rank)) return nullptr;
    Weight highest(static_cast<std::size_t>(rank));
    for (auto& x : highest) {
        std::int64_t v;
        if (!get_raw(is, v)) return nullptr;
        x = v;
    }
    if (highest != lambda) return nullptr;
    std::uint64_t count = 0;
    if (!get_raw(is, count) || count == 0 || count > (1ull << 32)) return nullptr;
    auto ws = std::make_shared<WeightSystem>();
    ws->algebra = rd.id;
    ws->highest = lambda;
    ws->dominant.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        Weight w(static_cast<std::size_t>(rank));
        for (auto& x : w) {
            std::int64_t v;
            if (!get_raw(is, v)) return nullptr;
            x = v;
        }
        std::int64_t m;
        if (!get_raw(is, m) || m < 1) return nullptr;
        if (!is_dominant(w)) return nullptr;
        ws->dominant.emplace_back(std::move(w), m);
    }
    if (ws->dominant.front().first != lambda || ws->dominant.front().second != 1) return nullptr;
    ws->build_index();
    if (ws->by_dominant.size() != ws->dominant.size()) return nullptr;
    BigInt total = 0;
    for (const auto& [w, m] : ws->dominant) total += BigInt(m) * weyl_orbit_size(rd, w);
    ws->total_dim = total;
    if (total != weyl_dim(rd, lambda)) return nullptr;
    return ws;
}

} // namespace detail

// Shared in-process store of weight systems. Concurrent requests for the same
// key trigger exactly one computation; an optional directory persists systems
// across processes.
class WeightSystemCache {
  public:
    WeightSystemCache() = default;
    explicit WeightSystemCache(std::filesystem::path dir) : dir_(std::move(dir)), use_disk_(true) {}

    void set_directory(std::filesystem::path dir) {
        std::lock_guard<std::mutex> lock(mu_);
        dir_ = std::move(dir);
        use_disk_ = true;
    }

    std::shared_ptr<const WeightSystem> get(const RootData& rd, const Weight& lambda) {
        const auto key = std::make_pair(rd.id, lambda);
        std::shared_future<std::shared_ptr<const WeightSystem>> fut;
        std::promise<std::shared_ptr<const WeightSystem>> prom;
        bool owner = false;
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = map_.find(key);
            if (it == map_.end()) {
                fut = prom.get_future().share();
                map_.emplace(key, fut);
                owner = true;
            } else {
                fut = it->second;
            }
        }
        if (owner) {
            try {
                std::shared_ptr<WeightSystem> ws;
                if (use_disk_) ws = detail::read_weight_system(dir_, rd, lambda);
                if (!ws) {
                    ++computes_;
                    ws = std::make_shared<WeightSystem>(compute_weight_system(rd, lambda));
                    if (use_disk_) detail::write_weight_system(dir_, *ws);
                }
                prom.set_value(std::move(ws));
            } catch (...) {
                prom.set_exception(std::current_exception());
            }
        }
        return fut.get();
    }

    std::size_t computed_count() const { return computes_.load(); }

  private:
    std::mutex mu_;
    std::map<std::pair<AlgebraId, Weight>, std::shared_future<std::shared_ptr<const WeightSystem>>> map_;
    std::filesystem::path dir_;
    bool use_disk_ = false;
    std::atomic<std::size_t> computes_{0};
};

} // namespace fusionkit
