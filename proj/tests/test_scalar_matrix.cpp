#include "doctest.h"
#include "weitz/matrix.hpp"
#include "weitz/rng.hpp"
#include "weitz/scalar.hpp"

using namespace weitz;

TEST_CASE("scalar field arithmetic in Q(i,r2,r3)") {
    Scalar z = Scalar(rat(1, 2)) + Scalar::i() * Scalar(rat(3)) + Scalar::r2();
    Scalar w = Scalar::r3() - Scalar::i() * Scalar::r6();
    CHECK(z * w == w * z);
    CHECK((z * w) * z.inverse() == w);
    CHECK(Scalar::r2() * Scalar::r2() == Scalar(2));
    CHECK(Scalar::r3() * Scalar::r3() == Scalar(3));
    CHECK(Scalar::r2() * Scalar::r3() == Scalar::r6());
    CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
    CHECK(Scalar::sqrt_rational(rat(8)) == Scalar(2) * Scalar::r2());
    CHECK(Scalar::sqrt_rational(rat(3, 4)) == Scalar(rat(1, 2)) * Scalar::r3());
    CHECK(Scalar::sqrt_rational(rat(2, 3)) == (Scalar::r6() / Scalar(3)));
    CHECK_THROWS_AS(Scalar::sqrt_rational(rat(5)), structural_error);
}

TEST_CASE("scalar string round trip") {
    Rng rng(7);
    for (int t = 0; t < 30; ++t) {
        Scalar z;
        for (int k = 0; k < 8; ++k) z.comp(k) = rng.rational(5, 4);
        CHECK(Scalar::from_string(z.to_string()) == z);
    }
    CHECK(Scalar().to_string() == "0");
    CHECK(Scalar::from_string("1/2+3*i-2*r2") ==
          Scalar(rat(1, 2)) + Scalar(3) * Scalar::i() - Scalar(2) * Scalar::r2());
}

TEST_CASE("rational matrix kernel, solve, inverse") {
    MatQ a(3, 4);
    long vals[3][4] = {{1, 2, 3, 4}, {2, 4, 6, 8}, {1, 0, 1, 0}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = rat(vals[i][j]);
    CHECK(rank(a) == 2);
    MatQ k = kernel(a);
    CHECK(k.cols() == 2);
    CHECK((a * k).is_zero());

    MatQ m = MatQ::identity(3);
    m(0, 1) = rat(5);
    m(2, 0) = rat(-2, 3);
    MatQ mi = inverse(m);
    CHECK(m * mi == MatQ::identity(3));
}

TEST_CASE("orthogonalize_columns keeps span and orthogonality") {
    Rng rng(11);
    MatQ v(5, 3);
    for (size_t i = 0; i < 5; ++i)
        for (size_t j = 0; j < 3; ++j) v(i, j) = rng.rational(4, 3);
    std::vector<Rat> norms;
    MatQ u = orthogonalize_columns(v, &norms);
    for (size_t a = 0; a < 3; ++a)
        for (size_t b = 0; b < a; ++b) {
            Rat ip = 0;
            for (size_t i = 0; i < 5; ++i) ip += u(i, a) * u(i, b);
            CHECK(is_zero(ip));
        }
}
