#include <set>

#include "doctest.h"
#include "weitz/liealg.hpp"

using namespace weitz;
using namespace weitz::liealg;

namespace {

HighestWeight hw(std::vector<long> c) { return HighestWeight{std::move(c)}; }

Decomposition dec(const char* spec_name, std::vector<long> a, std::vector<long> b) {
    auto spec = LieAlgebraSpec::parse(spec_name);
    return tensor_decompose(spec, hw(std::move(a)), hw(std::move(b)));
}

bool has(const Decomposition& d, std::vector<long> w, long m) {
    for (const auto& [x, mx] : d.summands)
        if (x.coords == w && mx == m) return true;
    return false;
}

}  // namespace

TEST_CASE("weyl dimensions") {
    auto g2 = LieAlgebraSpec::parse("G2");
    CHECK(weyl_dim(g2, hw({1, 0})) == 7);
    CHECK(weyl_dim(g2, hw({0, 1})) == 14);
    CHECK(weyl_dim(g2, hw({2, 0})) == 27);
    CHECK(weyl_dim(g2, hw({3, 0})) == 77);
    CHECK(weyl_dim(g2, hw({0, 2})) == 77);
    CHECK(weyl_dim(g2, hw({1, 1})) == 64);
    CHECK(weyl_dim(g2, hw({2, 1})) == 189);
    CHECK(weyl_dim(g2, hw({4, 0})) == 182);
    CHECK(weyl_dim(g2, hw({0, 0})) == 1);

    auto b3 = LieAlgebraSpec::parse("B3");
    CHECK(weyl_dim(b3, hw({1, 0, 0})) == 7);
    CHECK(weyl_dim(b3, hw({0, 1, 0})) == 21);
    CHECK(weyl_dim(b3, hw({0, 0, 1})) == 8);   // spinor
    CHECK(weyl_dim(b3, hw({1, 0, 1})) == 48);  // Rarita-Schwinger kernel

    auto c2 = LieAlgebraSpec::parse("C2");
    CHECK(weyl_dim(c2, hw({1, 0})) == 4);
    CHECK(weyl_dim(c2, hw({0, 1})) == 5);
    CHECK(weyl_dim(c2, hw({1, 1})) == 16);
    CHECK(weyl_dim(c2, hw({2, 0})) == 10);
    CHECK(weyl_dim(c2, hw({0, 2})) == 14);

    auto a1a1 = LieAlgebraSpec::parse("A1xA1");
    CHECK(weyl_dim(a1a1, hw({1, 1})) == 4);  // so(4) vector
    CHECK(weyl_dim(a1a1, hw({2, 2})) == 9);  // sym2_0

    auto b2 = LieAlgebraSpec::parse("B2");
    CHECK(weyl_dim(b2, hw({0, 1})) == 4);
    CHECK(weyl_dim(b2, hw({1, 1})) == 16);
    CHECK(weyl_dim(b2, hw({1, 4})) == 105);  // Sym^{3,2} Cartan summand, m=5
}

TEST_CASE("trivial and dual behavior") {
    auto g2 = LieAlgebraSpec::parse("G2");
    // -w0 = id for G2, checked against the generic implementation.
    CHECK(dual_hw(g2, hw({3, 2})) == hw({3, 2}));
    auto a2 = LieAlgebraSpec::parse("A2");
    CHECK(dual_hw(a2, hw({1, 0})) == hw({0, 1}));
    CHECK(dual_hw(a2, hw({2, 1})) == hw({1, 2}));
    auto d4 = LieAlgebraSpec::parse("D4");
    CHECK(dual_hw(d4, hw({0, 0, 1, 0})) == hw({0, 0, 1, 0}));

    // tensor with trivial returns the weight itself
    auto d = dec("G2", {2, 1}, {0, 0});
    CHECK(d.summands.size() == 1);
    CHECK(has(d, {2, 1}, 1));
}

TEST_CASE("the five G2 products") {
    // T (x) g2
    auto d1 = dec("G2", {1, 0}, {0, 1});
    CHECK(d1.summands.size() == 3);
    CHECK(has(d1, {1, 0}, 1));
    CHECK(has(d1, {2, 0}, 1));
    CHECK(has(d1, {1, 1}, 1));
    // T (x) Lambda^3_27
    auto d2 = dec("G2", {1, 0}, {2, 0});
    CHECK(d2.summands.size() == 5);
    CHECK(has(d2, {1, 0}, 1));
    CHECK(has(d2, {2, 0}, 1));
    CHECK(has(d2, {3, 0}, 1));
    CHECK(has(d2, {0, 1}, 1));
    CHECK(has(d2, {1, 1}, 1));
    // g2 (x) g2
    auto d3 = dec("G2", {0, 1}, {0, 1});
    CHECK(d3.summands.size() == 5);
    CHECK(has(d3, {0, 0}, 1));
    CHECK(has(d3, {2, 0}, 1));
    CHECK(has(d3, {3, 0}, 1));
    CHECK(has(d3, {0, 1}, 1));
    CHECK(has(d3, {0, 2}, 1));
    // g2 (x) Lambda^3_27
    auto d4 = dec("G2", {0, 1}, {2, 0});
    CHECK(d4.summands.size() == 6);
    CHECK(has(d4, {1, 0}, 1));
    CHECK(has(d4, {2, 0}, 1));
    CHECK(has(d4, {3, 0}, 1));
    CHECK(has(d4, {0, 1}, 1));
    CHECK(has(d4, {1, 1}, 1));
    CHECK(has(d4, {2, 1}, 1));
    // Lambda^3_27 (x) Lambda^3_27, with the multiplicity-2 entries
    auto d5 = dec("G2", {2, 0}, {2, 0});
    CHECK(d5.summands.size() == 9);
    CHECK(has(d5, {0, 0}, 1));
    CHECK(has(d5, {1, 0}, 1));
    CHECK(has(d5, {2, 0}, 2));
    CHECK(has(d5, {3, 0}, 1));
    CHECK(has(d5, {4, 0}, 1));
    CHECK(has(d5, {0, 1}, 1));
    CHECK(has(d5, {1, 1}, 2));
    CHECK(has(d5, {2, 1}, 1));
    CHECK(has(d5, {0, 2}, 1));
}

TEST_CASE("dimension balance and commutativity properties") {
    auto specs = {LieAlgebraSpec::parse("G2"), LieAlgebraSpec::parse("B2"),
                  LieAlgebraSpec::parse("A2"), LieAlgebraSpec::parse("C2"),
                  LieAlgebraSpec::parse("A1xA1")};
    for (const auto& spec : specs) {
        std::vector<HighestWeight> ws;
        int r = spec.total_rank();
        for (long a = 0; a <= 2; ++a)
            for (long b = 0; b <= 1; ++b) {
                std::vector<long> c(r, 0);
                c[0] = a;
                c[r - 1] = b;
                ws.push_back(hw(c));
            }
        for (const auto& w1 : ws)
            for (const auto& w2 : ws) {
                auto d = tensor_decompose(spec, w1, w2);
                CHECK(total_dimension(spec, d) == weyl_dim(spec, w1) * weyl_dim(spec, w2));
                auto d2 = tensor_decompose(spec, w2, w1);
                CHECK(d.summands == d2.summands);
            }
    }
}

TEST_CASE("duality pairs the trivial weight exactly once") {
    auto b3 = LieAlgebraSpec::parse("B3");
    for (auto w : {hw({1, 0, 1}), hw({0, 1, 0}), hw({2, 0, 0})}) {
        auto d = tensor_decompose(b3, w, dual_hw(b3, w));
        long triv = 0;
        for (const auto& [x, m] : d.summands)
            if (x == hw({0, 0, 0})) triv = m;
        CHECK(triv == 1);
    }
}

TEST_CASE("casimir monotone along a dominant ray") {
    auto g2 = LieAlgebraSpec::parse("G2");
    Rat prev(-1);
    for (long k = 0; k <= 5; ++k) {
        Rat c = casimir_l2(g2, hw({k, k}), rat(1));
        CHECK(c > prev);
        prev = c;
    }
}

TEST_CASE("weight systems recompose dimensions") {
    auto g2 = LieAlgebraSpec::parse("G2");
    auto ws = weight_system(g2, hw({2, 0}));
    long total = 0;
    for (const auto& [w, m] : ws) total += m;
    CHECK(total == 27);
    // decompose_by_weights inverts weight_system
    auto d = decompose_by_weights(g2, ws);
    CHECK(d.summands.size() == 1);
    CHECK(has(d, {2, 0}, 1));

    // a small plethysm-like multiset: weights of 7 (x) 7
    auto w7 = weight_system(g2, hw({1, 0}));
    std::map<std::vector<long>, long> prod;
    for (const auto& [a, ma] : w7)
        for (const auto& [b, mb] : w7) {
            std::vector<long> s{a[0] + b[0], a[1] + b[1]};
            prod[s] += ma * mb;
        }
    auto d77 = decompose_by_weights(g2, prod);
    CHECK(d77.summands.size() == 4);
    CHECK(has(d77, {0, 0}, 1));
    CHECK(has(d77, {1, 0}, 1));
    CHECK(has(d77, {0, 1}, 1));
    CHECK(has(d77, {2, 0}, 1));
}

TEST_CASE("input validation") {
    auto g2 = LieAlgebraSpec::parse("G2");
    CHECK_THROWS_AS(weyl_dim(g2, hw({1})), input_error);
    CHECK_THROWS_AS(weyl_dim(g2, hw({1, -1})), input_error);
    CHECK_THROWS_AS(casimir_l2(g2, hw({1, 0}), rat(-1)), input_error);
    CHECK_THROWS_AS(LieAlgebraSpec::parse("E8"), input_error);
}
