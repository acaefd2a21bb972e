#pragma once

#include <vector>

#include "weitz/holctx.hpp"
#include "weitz/rep.hpp"

namespace weitz::qk {

using holctx::HolonomyContext;

/// Complex H/E models of a Sp(1)Sp(n) context: the action of each raw hol
/// basis element through the identification T (x) C = H (x) E, plus the
/// invariant symplectic form on E. sp(1) elements act on H only, sp(n)
/// elements on E only.
struct Models {
    const HolonomyContext* ctx = nullptr;
    int n = 0;
    std::vector<MatS> h_action;  // 2 x 2, zero for sp(n) basis elements
    std::vector<MatS> e_action;  // 2n x 2n, zero for sp(1) basis elements
    MatS omega;                  // symplectic form on E
};

Models build_models(const HolonomyContext& ctx);

/// Sym^k H as a representation of the full raw basis.
MatrixRep rep_sym_h(const HolonomyContext& ctx, int k);

/// Lambda^{a,b}_o E: the Cartan summand inside the primitive exterior powers
/// Lambda^a_o E (x) Lambda^b_o E (kernels of the symplectic contraction).
MatrixRep rep_lambda_ab_e(const HolonomyContext& ctx, int a, int b);

/// Parity of a C1 x Cn weight under the central element (-1,-1); genuine
/// Sp(1)Sp(n) bundles are the even ones.
bool weight_parity_odd(const liealg::LieAlgebraSpec& spec, const std::vector<long>& w);

/// Throws structural_error unless every weight of the representation is even.
void check_genuine_bundle(const MatrixRep& rep);

// --- building blocks for the Sym^k H (x) Lambda^{a,b}_o E gradient survey ---

/// Exterior-power model of E with explicit wedge and contraction operators.
struct LambdaE {
    int n = 0;
    int degree = 0;
    size_t dim = 0;                          // C(2n, degree)
    std::vector<std::vector<size_t>> basis;  // increasing index tuples
};

LambdaE lambda_e(int n, int degree);

/// Wedge with a fixed vector v in E: Lambda^a E -> Lambda^{a+1} E.
MatS wedge_op(const Models& m, const LambdaE& from, const LambdaE& to,
              const std::vector<Scalar>& v);
/// Contraction with omega(v, .): Lambda^a E -> Lambda^{a-1} E.
MatS contract_op(const Models& m, const LambdaE& from, const LambdaE& to,
                 const std::vector<Scalar>& v);

/// Inclusion of the primitive part Lambda^a_o E into Lambda^a E (columns).
MatS primitive_inclusion(const Models& m, int a);

/// Action of one sp(n) generator (E-model matrix) on Lambda^a E.
MatS lambda_action(const LambdaE& le, const MatS& e_mat);

}  // namespace weitz::qk
