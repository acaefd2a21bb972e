#include <map>
#include <set>

#include "doctest.h"
#include "weitz/holctx.hpp"

using namespace weitz;
using namespace weitz::holctx;

TEST_CASE("SO(m) context is the full bivector algebra") {
    for (int m : {3, 4, 5, 6, 7}) {
        auto ctx = build_context(ContextKind::SO, m);
        CHECK(ctx->dim_hol() == biv_dim(m));
        CHECK(ctx->dim_perp() == 0);
        CHECK(ctx->pr_hol_matrix == MatQ::identity(biv_dim(m)));
        // calibration: vector-representation Casimir equals m-1
        Rat cas = liealg::casimir_l2(ctx->spec, ctx->t_weight, ctx->factor_scales);
        CHECK(cas == rat(m - 1));
    }
}

TEST_CASE("G2 context: dimensions, projection, Casimir") {
    auto ctx = build_context(ContextKind::G2, 7);
    CHECK(ctx->dim_hol() == 14);
    CHECK(ctx->dim_perp() == 7);
    // squared norm of pr_hol(e_0 ^ e_1) is 2/3
    MatQ biv(7, 7);
    biv(1, 0) = 1;
    biv(0, 1) = -1;
    MatQ proj = ctx->project_matrix(biv);
    Rat norm2 = 0;
    auto co = biv_coords(proj);
    for (const auto& c : co) norm2 += c * c;
    CHECK(norm2 == rat(2, 3));
    // residual orthogonal to hol
    MatQ residual = biv - proj;
    CHECK(ctx->project_matrix(residual).is_zero());
    // orthonormal-basis coefficients reproduce the projection
    auto coeff = project_to_hol(*ctx, biv);
    MatS recon(7, 7);
    for (size_t a = 0; a < coeff.size(); ++a) recon += coeff[a] * ctx->hol_basis[a];
    CHECK(to_rational(recon) == proj);
    // T Casimir on the 7-dim irreducible
    Rat cas = liealg::casimir_l2(ctx->spec, ctx->t_weight, ctx->factor_scales);
    CHECK(cas == rat(4));
}

TEST_CASE("U(2) projection matches the Kaehler formula") {
    auto ctx = build_context(ContextKind::U, 2);
    CHECK(ctx->m == 4);
    CHECK(ctx->dim_hol() == 4);
    // pr(e_0 ^ e_2) = (e_0^e_2 + e_1^e_3)/2 with J e_0 = e_1, J e_2 = e_3
    MatQ biv(4, 4);
    biv(2, 0) = 1;
    biv(0, 2) = -1;
    MatQ proj = ctx->project_matrix(biv);
    MatQ expect(4, 4);
    expect(2, 0) = rat(1, 2);
    expect(0, 2) = rat(-1, 2);
    expect(3, 1) = rat(1, 2);
    expect(1, 3) = rat(-1, 2);
    CHECK(proj == expect);

    // the same from the displayed formula pr(X^Y) = pr10 X ^ pr01 Y + pr01 X ^ pr10 Y,
    // evaluated with complexified projections pr^{10} = (1 - iJ)/2, pr^{01} = (1 + iJ)/2.
    MatS J = to_scalar(ctx->complex_structure);
    MatS id = MatS::identity(4);
    MatS p10 = Scalar(rat(1, 2)) * (id - Scalar::i() * J);
    MatS p01 = Scalar(rat(1, 2)) * (id + Scalar::i() * J);
    // X = e0, Y = e2 as column vectors
    auto col = [&](const MatS& p, int k) {
        std::vector<Scalar> v(4);
        for (int r = 0; r < 4; ++r) v[r] = p(r, k);
        return v;
    };
    auto x10 = col(p10, 0), x01 = col(p01, 0), y10 = col(p10, 2), y01 = col(p01, 2);
    // wedge u^v as matrix: g(u,w)v - g(v,w)u -> matrix v u^T - u v^T
    auto wedge = [&](const std::vector<Scalar>& u, const std::vector<Scalar>& v) {
        MatS w(4, 4);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) w(r, c) = v[r] * u[c] - u[r] * v[c];
        return w;
    };
    MatS formula = wedge(x10, y01) + wedge(x01, y10);
    CHECK(to_rational(formula) == proj);
}

TEST_CASE("SO(m) projection is the identity on bivectors") {
    auto ctx = build_context(ContextKind::SO, 5);
    MatQ biv(5, 5);
    biv(1, 0) = rat(3, 2);
    biv(0, 1) = rat(-3, 2);
    biv(4, 2) = rat(-7);
    biv(2, 4) = rat(7);
    CHECK(ctx->project_matrix(biv) == biv);
}

TEST_CASE("equivariance of pr_hol") {
    auto ctx = build_context(ContextKind::G2, 7);
    // pr_hol([A, beta]) = [A, pr_hol(beta)] for A in hol
    MatQ beta(7, 7);
    beta(3, 0) = 2;
    beta(0, 3) = -2;
    beta(5, 1) = rat(1, 3);
    beta(1, 5) = rat(-1, 3);
    for (size_t a = 0; a < 3; ++a) {
        MatQ lhs = ctx->project_matrix(commutator(ctx->hol_raw[a], beta));
        MatQ rhs = commutator(ctx->hol_raw[a], ctx->project_matrix(beta));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("Sp(1)Sp(2) context builds and calibrates") {
    auto ctx = build_context(ContextKind::Sp1Spn, 2);
    CHECK(ctx->m == 8);
    CHECK(ctx->dim_hol() == 13);  // 3 + 10
    CHECK(ctx->dim_perp() == 15);
    CHECK(ctx->spec.name() == "C1xC2");
    CHECK(ctx->factor_indices[0].size() == 3);
    CHECK(ctx->factor_indices[1].size() == 10);
}

TEST_CASE("SU(3) nearly-Kaehler context") {
    auto ctx = build_context(ContextKind::SU3NK, 6);
    CHECK(ctx->dim_hol() == 8);
    CHECK(ctx->dim_perp() == 7);
    CHECK(ctx->spec.name() == "A2");
}

TEST_CASE("spin-enabled context carries Clifford generators") {
    auto ctx = build_context(ContextKind::SOSpin, 7);
    CHECK(ctx->clifford.size() == 7);
    CHECK(ctx->clifford[0].rows() == 8);
}

TEST_CASE("gradient targets of (SO(m), T)") {
    for (int m : {3, 5}) {
        auto ctx = build_context(ContextKind::SO, m);
        auto rep = ctx->tangent_rep();
        auto comps = gradient_targets(*ctx, rep);
        REQUIRE(comps.size() == 3);
        std::multiset<size_t> dims;
        for (const auto& c : comps) dims.insert(c.dim);
        std::multiset<size_t> want{1, static_cast<size_t>(m * (m - 1) / 2),
                                   static_cast<size_t>(m * (m + 1) / 2 - 1)};
        CHECK(dims == want);
        // projectors orthogonal and idempotent
        for (const auto& c : comps) {
            CHECK(c.projector * c.projector == c.projector);
            CHECK(c.projector.transpose() == c.projector);
        }
    }
}

TEST_CASE("gradient targets of (SO(4), T) splits chirally") {
    auto ctx = build_context(ContextKind::SO, 4);
    auto comps = gradient_targets(*ctx, ctx->tangent_rep());
    REQUIRE(comps.size() == 4);  // trivial, Lambda+, Lambda-, Sym^2_0
    std::multiset<size_t> dims;
    for (const auto& c : comps) dims.insert(c.dim);
    CHECK(dims == std::multiset<size_t>{1, 3, 3, 9});
}

TEST_CASE("gradient targets of (G2, T): 1 + 7 + 14 + 27") {
    auto ctx = build_context(ContextKind::G2, 7);
    auto comps = gradient_targets(*ctx, ctx->tangent_rep());
    REQUIRE(comps.size() == 4);
    std::multiset<size_t> dims;
    for (const auto& c : comps) dims.insert(c.dim);
    CHECK(dims == std::multiset<size_t>{1, 7, 14, 27});
}

TEST_CASE("conformal weights of (SO(3), T) and the coefficient table") {
    auto ctx = build_context(ContextKind::SO, 3);
    auto table = conformal_weights(*ctx, ctx->tangent_rep());
    REQUIRE(table.entries.size() == 3);
    // weights: Lambda^2 -> -1, Sym^2_0 -> +1, trivial -> -(m-1) = -2
    std::map<size_t, Rat> by_dim;
    for (const auto& e : table.entries) by_dim[e.component.dim] = e.b;
    CHECK(by_dim[3] == rat(-1));
    CHECK(by_dim[5] == rat(1));
    CHECK(by_dim[1] == rat(-2));
    for (const auto& e : table.entries) CHECK(e.casimir_formula_ok);
    // Weitzenboeck coefficients {2, 0, m}
    std::multiset<Rat> coeffs;
    for (const auto& e : table.entries) coeffs.insert(e.weitzenboeck_coeff);
    CHECK(coeffs == std::multiset<Rat>{rat(0), rat(2), rat(3)});
    // B = sum b_e pr_e exactly
    MatS sum(9, 9);
    for (const auto& e : table.entries) sum += Scalar(e.b) * e.component.projector;
    CHECK(sum == table.B_matrix);
}

TEST_CASE("conformal weights of (SO(m), T) give coefficients {2, 0, m}") {
    for (int m : {4, 5}) {
        auto ctx = build_context(ContextKind::SO, m);
        auto table = conformal_weights(*ctx, ctx->tangent_rep());
        std::multiset<Rat> coeffs;
        for (const auto& e : table.entries) coeffs.insert(e.weitzenboeck_coeff);
        // m = 4: the Lambda^2 class appears twice (chiral halves), both coeff 2
        if (m == 4)
            CHECK(coeffs == std::multiset<Rat>{rat(0), rat(2), rat(2), rat(4)});
        else
            CHECK(coeffs == std::multiset<Rat>{rat(0), rat(2), rat(m)});
        for (const auto& e : table.entries) CHECK(e.casimir_formula_ok);
    }
}

TEST_CASE("conformal weights of (G2, T)") {
    auto ctx = build_context(ContextKind::G2, 7);
    auto table = conformal_weights(*ctx, ctx->tangent_rep());
    REQUIRE(table.entries.size() == 4);
    std::map<size_t, Rat> by_dim;
    Rat trace = 0;
    for (const auto& e : table.entries) {
        by_dim[e.component.dim] = e.b;
        trace += e.b * Rat(static_cast<long>(e.component.dim));
        CHECK(e.casimir_formula_ok);
    }
    CHECK(is_zero(trace));
    CHECK(by_dim[1] == rat(-4));     // trivial: (0 - 4 - 4)/2
    CHECK(by_dim[7] == rat(-2));     // [1,0]: (4 - 8)/2
    CHECK(by_dim[14] == rat(0));     // [0,1]: (8 - 8)/2
    CHECK(by_dim[27] == rat(2, 3));  // [2,0]: (28/3 - 8)/2
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(build_context(ContextKind::SO, 2), input_error);
    CHECK_THROWS_AS(build_context(ContextKind::G2, 8), input_error);
    CHECK_THROWS_AS(build_context(ContextKind::SU3NK, 7), input_error);
    auto ctx = build_context(ContextKind::SO, 3);
    MatQ bad(3, 3);
    bad(0, 0) = 1;
    CHECK_THROWS_AS(project_to_hol(*ctx, bad), input_error);
}
