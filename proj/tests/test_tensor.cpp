#include <catch2/catch_amalgamated.hpp>

#include "fusionkit/tensor.hpp"
#include "oracles.hpp"

using namespace fusionkit;

namespace {

WeightSystemCache& cache() {
    static WeightSystemCache c;
    return c;
}

Decomposition conj_decomposition(const RootData& rd, const Decomposition& d) {
    Decomposition out;
    out.context = d.context;
    for (const auto& [w, m] : d.terms) out.terms.emplace(conjugate_weight(rd, w), m);
    return out;
}

} // namespace

TEST_CASE("su(3) products") {
    RootData a2 = build_algebra({'A', 2});

    Decomposition d = tensor_decompose(a2, {2, 1}, {2, 1}, cache());
    std::map<Weight, Int> expected{{{4, 2}, 1}, {{5, 0}, 1}, {{2, 3}, 1}, {{3, 1}, 2},
                                   {{0, 4}, 1}, {{1, 2}, 2}, {{2, 0}, 1}, {{0, 1}, 1}};
    CHECK(d.terms == expected);
    CHECK(d.context.kind == ContextKind::tensor);
    CHECK(d.context.algebra.name() == "A2");

    CHECK(tensor_decompose(a2, {1, 0}, {0, 1}, cache()).terms ==
          std::map<Weight, Int>{{{1, 1}, 1}, {{0, 0}, 1}});
    CHECK(tensor_decompose(a2, {1, 0}, {1, 0}, cache()).terms ==
          std::map<Weight, Int>{{{2, 0}, 1}, {{0, 1}, 1}});
    CHECK(tensor_decompose(a2, {2, 1}, {0, 0}, cache()).terms == std::map<Weight, Int>{{{2, 1}, 1}});
}

TEST_CASE("su(2) products match the Clebsch-Gordan ladder") {
    RootData a1 = build_algebra({'A', 1});
    for (Int a = 0; a <= 6; ++a)
        for (Int b = 0; b <= 6; ++b) {
            Decomposition d = tensor_decompose(a1, {a}, {b}, cache());
            for (Int c = 0; c <= a + b + 1; ++c) {
                const bool in_ladder = c >= std::abs(a - b) && c <= a + b && (a + b + c) % 2 == 0;
                const Int got = d.terms.count({c}) ? d.terms.at({c}) : 0;
                REQUIRE(got == (in_ladder ? 1 : 0));
            }
        }
}

TEST_CASE("G2 seven squared") {
    RootData g2 = build_algebra({'G', 2});
    CHECK(tensor_decompose(g2, {1, 0}, {1, 0}, cache()).terms ==
          std::map<Weight, Int>{{{2, 0}, 1}, {{0, 1}, 1}, {{1, 0}, 1}, {{0, 0}, 1}});
}

TEST_CASE("commutativity, conjugation covariance, and the trivial term") {
    for (const char* name : {"A2", "A3", "B2"}) {
        INFO(name);
        RootData rd = build_algebra(parse_algebra(name));
        auto weights = dominant_weights_up_to(rd, 3);
        for (const Weight& lam : weights)
            for (const Weight& mu : weights) {
                Decomposition d = tensor_decompose(rd, lam, mu, cache());
                REQUIRE(d.terms == tensor_decompose(rd, mu, lam, cache()).terms);
                Decomposition dbar =
                    tensor_decompose(rd, conjugate_weight(rd, lam), conjugate_weight(rd, mu), cache());
                REQUIRE(conj_decomposition(rd, d).terms == dbar.terms);
                // The trivial representation appears iff mu is the conjugate
                // of lambda, and then exactly once.
                Weight zero(static_cast<std::size_t>(rd.rank), 0);
                const Int n0 = d.terms.count(zero) ? d.terms.at(zero) : 0;
                REQUIRE(n0 == (mu == conjugate_weight(rd, lam) ? 1 : 0));
            }
    }
}

TEST_CASE("dimension sum rule") {
    for (const char* name : {"A2", "A3", "B2", "G2"}) {
        INFO(name);
        RootData rd = build_algebra(parse_algebra(name));
        auto weights = dominant_weights_up_to(rd, 3);
        for (const Weight& lam : weights)
            for (const Weight& mu : weights) {
                Decomposition d = tensor_decompose(rd, lam, mu, cache());
                BigInt total = 0;
                for (const auto& [nu, n] : d.terms) {
                    REQUIRE(n >= 1);
                    total += BigInt(n) * weyl_dim(rd, nu);
                }
                REQUIRE(total == weyl_dim(rd, lam) * weyl_dim(rd, mu));
            }
    }
    RootData d5 = build_algebra({'D', 5});
    for (const Weight& lam : dominant_weights_up_to(d5, 2)) {
        Decomposition d = tensor_decompose(d5, lam, {1, 0, 0, 0, 0}, cache());
        BigInt total = 0;
        for (const auto& [nu, n] : d.terms) total += BigInt(n) * weyl_dim(d5, nu);
        CHECK(total == weyl_dim(d5, lam) * 10);
    }
}

TEST_CASE("oracle agrees with the reflection algorithm") {
    for (const char* name : {"A1", "A2", "B2"}) {
        INFO(name);
        RootData rd = build_algebra(parse_algebra(name));
        std::vector<Weight> box;
        Weight cur(static_cast<std::size_t>(rd.rank), 0);
        auto rec = [&](auto&& self, int pos) -> void {
            if (pos == rd.rank) {
                box.push_back(cur);
                return;
            }
            for (Int v = 0; v <= 2; ++v) {
                cur[static_cast<std::size_t>(pos)] = v;
                self(self, pos + 1);
            }
        };
        rec(rec, 0);
        for (const Weight& lam : box)
            for (const Weight& mu : box) {
                INFO(format_weight(lam) << " x " << format_weight(mu));
                REQUIRE(tensor_oracle(rd, lam, mu, cache()).terms ==
                        tensor_decompose(rd, lam, mu, cache()).terms);
            }
    }
}

TEST_CASE("oracle peeling handles non-graded orderings") {
    // The weight (3,-1) of the G2 adjoint has a larger label sum than the
    // highest weight (0,1); peeling by height instead of label sum keeps the
    // oracle sound on such modules.
    RootData g2 = build_algebra({'G', 2});
    CHECK(tensor_oracle(g2, {0, 1}, {0, 1}, cache()).terms ==
          tensor_decompose(g2, {0, 1}, {0, 1}, cache()).terms);
    RootData a3 = build_algebra({'A', 3});
    CHECK(tensor_oracle(a3, {0, 2, 0}, {0, 2, 0}, cache()).terms ==
          tensor_decompose(a3, {0, 2, 0}, {0, 2, 0}, cache()).terms);
}

TEST_CASE("oracle capacity guards") {
    RootData a4 = build_algebra({'A', 4});
    CHECK_THROWS_AS(tensor_oracle(a4, {1, 0, 0, 0}, {1, 0, 0, 0}, cache()), capacity_error_t);
    RootData b3 = build_algebra({'B', 3});
    REQUIRE(weyl_dim(b3, {3, 3, 3}) * weyl_dim(b3, {3, 3, 3}) > 100000000);
    CHECK_THROWS_AS(tensor_oracle(b3, {3, 3, 3}, {3, 3, 3}, cache()), capacity_error_t);
    CHECK_THROWS_AS(tensor_decompose(b3, {1, 0, 0}, {-1, 0, 0}, cache()), domain_error_t);
    CHECK_THROWS_AS(tensor_decompose(b3, {1, 0}, {1, 0, 0}, cache()), domain_error_t);
}

TEST_CASE("results are identical for any worker thread count") {
    RootData a3 = build_algebra({'A', 3});
    set_worker_threads(1);
    Decomposition one = tensor_decompose(a3, {1, 2, 2}, {1, 2, 2}, cache());
    set_worker_threads(4);
    WeightSystemCache fresh;
    Decomposition four = tensor_decompose(a3, {1, 2, 2}, {1, 2, 2}, fresh);
    set_worker_threads(1);
    CHECK(one.terms == four.terms);
    CHECK(format_terms(one) == format_terms(four));
}

TEST_CASE("multiplication graphs") {
    RootData a2 = build_algebra({'A', 2});
    const std::string g0 = tensor_graph(a2, {1, 0}, 0, cache());
    CHECK(g0 ==
          "digraph tensor_graph {\n"
          "  rankdir=LR;\n"
          "  \"(0,0)\";\n"
          "  \"(1,0)\";\n"
          "  \"(0,0)\" -> \"(1,0)\" [label=1];\n"
          "}\n");
    const std::string g1 = tensor_graph(a2, {1, 0}, 1, cache());
    CHECK(g1 ==
          "digraph tensor_graph {\n"
          "  rankdir=LR;\n"
          "  \"(0,0)\";\n"
          "  \"(1,0)\";\n"
          "  \"(0,1)\";\n"
          "  \"(2,0)\";\n"
          "  \"(1,1)\";\n"
          "  \"(0,0)\" -> \"(1,0)\" [label=1];\n"
          "  \"(1,0)\" -> \"(0,1)\" [label=1];\n"
          "  \"(1,0)\" -> \"(2,0)\" [label=1];\n"
          "  \"(0,1)\" -> \"(0,0)\" [label=1];\n"
          "  \"(0,1)\" -> \"(1,1)\" [label=1];\n"
          "}\n");
    RootData a1 = build_algebra({'A', 1});
    const std::string h = tensor_graph(a1, {1}, 2, cache());
    CHECK(h.find("\"(0)\" -> \"(1)\" [label=1];") != std::string::npos);
    CHECK(h.find("\"(1)\" -> \"(0)\" [label=1];") != std::string::npos);
    CHECK(h.find("\"(1)\" -> \"(2)\" [label=1];") != std::string::npos);
    CHECK(h.find("\"(2)\" -> \"(3)\" [label=1];") != std::string::npos);
    CHECK(tensor_graph(a1, {1}, 2, cache()) == h);
}

TEST_CASE("formatting of term lists") {
    RootData a2 = build_algebra({'A', 2});
    Decomposition d = tensor_decompose(a2, {2, 1}, {2, 1}, cache());
    CHECK(format_terms(d) ==
          "1(4,2) + 1(5,0) + 1(2,3) + 2(3,1) + 1(0,4) + 2(1,2) + 1(2,0) + 1(0,1)");
    Decomposition empty;
    empty.context = d.context;
    CHECK(format_terms(empty) == "0");
}
