#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weitz/holctx.hpp"
#include "weitz/rep.hpp"
#include "weitz/rng.hpp"

namespace weitz::matmodel {

using holctx::HolonomyContext;

// --- representation functors -----------------------------------------------

MatrixRep rep_trivial(const HolonomyContext& ctx);
MatrixRep rep_dual(const MatrixRep& rep);
MatrixRep rep_tensor(const MatrixRep& a, const MatrixRep& b);
MatrixRep rep_lambda_power(const MatrixRep& rep, int p);
MatrixRep rep_sym_power(const MatrixRep& rep, int p);
/// Trace-free symmetric power of T (kernel of the metric contraction).
MatrixRep rep_sym0_power(const MatrixRep& rep, int p);
MatrixRep rep_spinor(const HolonomyContext& ctx);

/// Restriction of rep to the subspace spanned by the columns of basis.
MatrixRep rep_subspace(const MatrixRep& rep, const MatS& basis, const std::string& label,
                       std::map<std::vector<long>, long> weights);

/// The isotypic component labeled hw, as a representation in its own right.
MatrixRep rep_isotypic(const MatrixRep& rep, const liealg::HighestWeight& hw);

/// Cartan summand of a (x) b (both factors irreducible).
MatrixRep rep_cartan(const MatrixRep& a, const MatrixRep& b);

/// Expression front end: atoms t, triv, spinor, lambda:p, sym:p, sym0:p,
/// dual(expr), cartan(expr,expr), and for Sp(1)Sp(n) contexts symh:k and
/// labe:a,b; atoms joined by '*' for tensor products.
MatrixRep rep_functor(const HolonomyContext& ctx, const std::string& expr);

// --- curvature data ----------------------------------------------------------

/// R in Sym^2 hol as the operator Lambda^2 T -> hol on bivector coordinates
/// (rational, symmetric, supported on hol).
struct CurvatureTensor {
    std::shared_ptr<const HolonomyContext> ctx;
    MatQ op;  // biv_dim x biv_dim
    bool torsion_free = true;

    /// R_{X,Y} in hol as an antisymmetric matrix, for the bivector X ^ Y.
    MatQ hol_element(const MatQ& bivector) const;
    MatQ hol_element_pair(int mu, int nu) const;  // R_{e_mu, e_nu}

    /// 4-tensor component R(a,b,c,d) = g(R_{e_a, e_b} e_c, e_d).
    Rat component(int a, int b, int c, int d) const;

    MatQ ric() const;
    Rat kappa() const;
    MatQ ric0() const;

    /// Coefficients in the orthonormal hol basis (the Sym^2 hol matrix).
    MatS sym_orthonormal() const;
};

struct TorsionForm {
    int m = 0;
    std::vector<Rat> theta;  // theta(i,j,k), i<j<k, lexicographic

    Rat component(int i, int j, int k) const;  // antisymmetric lookup
    /// T(X,Y) as a matrix-valued pairing: column vector g-dual of theta(x,y,.)
    MatQ torsion_map(int x) const;  // Y -> T(e_x, Y), an antisymmetric matrix
    /// g(T ^ T)(a,b,c,d) (twice the parallel 4-form of the modified Bianchi).
    Rat g_t_wedge_t(int a, int b, int c, int d) const;

    static size_t triple_index(int m, int i, int j, int k);
};

struct CurvatureDerivative {
    std::shared_ptr<const HolonomyContext> ctx;
    std::vector<MatQ> components;  // m entries: (nabla_{e_lam} R).op

    /// (delta R)_{e_x} = -sum_mu (nabla_{e_mu} R)_{e_mu, e_x}, in hol.
    MatQ delta_r(int x) const;
    bool is_zero() const;
};

struct SymmetricSpaceData {
    int m = 0;                    // dim p
    std::vector<MatQ> k_action;   // k basis acting on p (antisymmetric m x m)
    std::vector<Rat> k_gext;      // g^ext(k_i, k_i) for the orthogonal k basis
    std::vector<MatQ> bracket_pp; // [p_a, p_b] in k coordinates: entry (i, pair)
    std::string name;

    static SymmetricSpaceData sphere(int m);        // so(m+1) = so(m) + R^m
    static SymmetricSpaceData complex_projective(int n);  // su(n+1) = u(n) + C^n
};

struct CurvatureModel {
    CurvatureTensor curvature;
    std::optional<TorsionForm> torsion;
};

CurvatureModel curvature_constant(std::shared_ptr<const HolonomyContext> ctx, const Rat& sec);
CurvatureModel curvature_symmetric_space(std::shared_ptr<const HolonomyContext> ctx,
                                         const SymmetricSpaceData& data);
CurvatureModel curvature_kaehler_const_hol_sec(std::shared_ptr<const HolonomyContext> ctx,
                                               const Rat& c);
CurvatureModel curvature_random_bianchi(std::shared_ptr<const HolonomyContext> ctx,
                                        std::uint64_t seed);
/// Metric connections nabla^t on a compact Lie group with bi-invariant metric;
/// t = +-1 are the flat Cartan connections, t = 0 the Levi-Civita midpoint.
CurvatureModel curvature_lie_group(std::shared_ptr<const HolonomyContext> ctx,
                                   const std::string& algebra, const Rat& t);

// --- the curvature endomorphism ----------------------------------------------

/// q(R) by Definition (pr_hol sum over frame pairs) and by the orthonormal
/// hol-basis sum; asserts exact equality of the two routes.
MatS q_of_R(const HolonomyContext& ctx, const MatrixRep& rep, const CurvatureTensor& r);

MatS q_of_R_definition(const HolonomyContext& ctx, const MatrixRep& rep, const CurvatureTensor& r);
MatS q_of_R_basis(const HolonomyContext& ctx, const MatrixRep& rep, const CurvatureTensor& r);

/// Action of a hol-valued antisymmetric matrix through the representation.
MatS action_of_hol_element(const HolonomyContext& ctx, const MatrixRep& rep, const MatQ& h);

/// q applied to one Sym^2 hol slice given directly as an operator matrix.
MatS q_of_slice(const HolonomyContext& ctx, const MatrixRep& rep, const MatQ& slice_op);

// --- identity reports ---------------------------------------------------------

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string note;
};

struct IdentitiesReport {
    std::vector<CheckResult> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

IdentitiesReport curvature_identities_check(const HolonomyContext& ctx, const CurvatureTensor& r,
                                            const std::optional<TorsionForm>& torsion,
                                            const std::vector<MatrixRep>& reps,
                                            const SymmetricSpaceData* symmetric_data = nullptr);

struct GrassmannReport {
    bool exact_mode = false;
    bool passed = false;
    std::string note;
    double max_sigma = 0.0;   // Monte Carlo: worst entry deviation in std errors
    Rat max_exact_deviation;  // exact mode: worst entrywise difference
};

GrassmannReport grassmann_integral_check(const HolonomyContext& ctx, const CurvatureTensor& r,
                                         const MatrixRep& rep, const Rat& lambda,
                                         const std::optional<TorsionForm>& torsion,
                                         std::uint64_t samples, std::uint64_t seed);

}  // namespace weitz::matmodel
